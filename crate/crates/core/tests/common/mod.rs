#![allow(dead_code)]

use std::sync::Arc;

use complicial::adapters::{builtin, nerve, quasicat_e, th0};
use complicial::standard::{delta, delta_t};
use complicial::{StratifiedSSet, TruncatedSSet};

pub struct Entry {
    pub name: &'static str,
    pub complex: Arc<StratifiedSSet>,
    /// The underlying simplicial set when it is known to be Kan.
    pub kan: Option<Arc<TruncatedSSet>>,
}

pub fn kan_nerve(name: &str, cap: usize) -> Arc<TruncatedSSet> {
    Arc::new(nerve(&builtin(name).unwrap(), cap).unwrap())
}

pub fn th0_nerve(name: &str, cap: usize) -> Arc<StratifiedSSet> {
    Arc::new(th0(&builtin(name).unwrap(), cap).unwrap())
}

pub fn qcat_nerve(name: &str, cap: usize) -> Arc<StratifiedSSet> {
    Arc::new(quasicat_e(kan_nerve(name, cap), cap).unwrap())
}

fn kan_entry(name: &'static str, category: &str, cap: usize) -> Entry {
    let k = kan_nerve(category, cap);
    Entry {
        name,
        complex: Arc::new(StratifiedSSet::max_strat(k.clone())),
        kan: Some(k),
    }
}

pub fn corpus() -> Vec<Entry> {
    let point = delta(0, 3).unwrap();
    vec![
        Entry {
            name: "point",
            kan: Some(point.sset().clone()),
            complex: point.complex().clone(),
        },
        kan_entry("th0 nerve Z/2 cap 4", "cyclic:2", 4),
        kan_entry("th0 nerve Z/3 cap 3", "cyclic:3", 3),
        kan_entry("th0 nerve S_3 cap 3", "symmetric:3", 3),
        kan_entry("th0 nerve codiscrete(2) cap 3", "codiscrete:2", 3),
        Entry {
            name: "qcat-e nerve S_3 cap 3",
            complex: qcat_nerve("symmetric:3", 3),
            kan: None,
        },
        Entry {
            name: "qcat-e nerve Boolean cap 3",
            complex: qcat_nerve("boolean", 3),
            kan: None,
        },
        Entry {
            name: "qcat-e nerve interval cap 3",
            complex: qcat_nerve("interval", 3),
            kan: None,
        },
        Entry {
            name: "min_strat delta 2",
            complex: delta(2, 2).unwrap().complex().clone(),
            kan: None,
        },
        Entry {
            name: "delta-t 1 cap 2",
            complex: delta_t(1, 2).unwrap().complex().clone(),
            kan: None,
        },
    ]
}
