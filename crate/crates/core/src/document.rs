//! JSON documents: complexes in, results out.
//!
//! Both formats are written with a fixed key order (struct field order),
//! two-space indentation and a trailing newline, so identical inputs give
//! byte-identical files. Simplices are referred to by their labels, which are
//! unique within a dimension.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::sset::{SimplexId, TruncatedSSet};
use crate::strat::StratifiedSSet;

pub const FORMAT_VERSION: u32 = 1;

/// A stratified simplicial set on disk.
///
/// `faces[d][x]` lists the labels of `d_0 x, ..., d_d x` (empty outer list
/// for `d = 0`), `degeneracies[d][x]` the labels of `s_0 x, ..., s_d x`
/// (empty outer list for `d = dim_cap`), and `thin[d]` the nondegenerate
/// thin simplices of dimension `d`. Degenerate simplices may also be listed
/// in `thin`; they are thin regardless.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub dim_cap: usize,
    pub simplices: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<String>>>,
    pub degeneracies: Vec<Vec<Vec<String>>>,
    pub thin: Vec<Vec<String>>,
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ComplexDocument {
    pub fn from_complex(x: &StratifiedSSet, name: Option<String>, provenance: Option<String>) -> Self {
        let s = x.sset();
        let cap = s.cap();
        let label = |d: usize, i: usize| s.label(SimplexId::new(d, i)).to_string();
        let simplices = (0..=cap).map(|d| (0..s.count(d)).map(|i| label(d, i)).collect()).collect();
        let faces = (0..=cap)
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                (0..s.count(d))
                    .map(|i| s.faces_of(d, i).iter().map(|&f| label(d - 1, f)).collect())
                    .collect()
            })
            .collect();
        let degeneracies = (0..=cap)
            .map(|d| {
                if d == cap {
                    return Vec::new();
                }
                (0..s.count(d))
                    .map(|i| s.degeneracies_of(d, i).iter().map(|&f| label(d + 1, f)).collect())
                    .collect()
            })
            .collect();
        let mut thin = vec![Vec::new(); cap + 1];
        for t in x.nondegenerate_thin() {
            thin[t.dim].push(s.label(t).to_string());
        }
        Self {
            format_version: FORMAT_VERSION,
            name,
            provenance,
            dim_cap: cap,
            simplices,
            faces,
            degeneracies,
            thin,
        }
    }

    pub fn to_complex(&self) -> Result<StratifiedSSet> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {}", self.format_version)));
        }
        let cap = self.dim_cap;
        if self.simplices.len() != cap + 1 || self.thin.len() != cap + 1 {
            return Err(Error::TableShape("simplices and thin need one list per dimension".into()));
        }
        let index: Vec<HashMap<&str, usize>> = self
            .simplices
            .iter()
            .map(|row| row.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
            .collect();
        for (d, row) in self.simplices.iter().enumerate() {
            if index[d].len() != row.len() {
                return Err(Error::TableShape(format!("duplicate label in dim {d}")));
            }
        }
        let resolve = |d: usize, l: &str| -> Result<usize> {
            index
                .get(d)
                .and_then(|m| m.get(l).copied())
                .ok_or_else(|| Error::UnknownLabel(format!("{l} (dim {d})")))
        };
        let table = |rows: &Vec<Vec<Vec<String>>>, offset: isize, what: &str| -> Result<Vec<Vec<Vec<usize>>>> {
            if rows.len() != cap + 1 {
                return Err(Error::TableShape(format!("{what} need one list per dimension")));
            }
            rows.iter()
                .enumerate()
                .map(|(d, row)| {
                    row.iter()
                        .map(|entry| {
                            let target = d as isize + offset;
                            if target < 0 {
                                return Err(Error::TableShape(format!("{what} given for dim {d}")));
                            }
                            entry.iter().map(|l| resolve(target as usize, l)).collect()
                        })
                        .collect()
                })
                .collect()
        };
        let faces = table(&self.faces, -1, "faces")?;
        let degens = table(&self.degeneracies, 1, "degeneracies")?;
        let counts = self.simplices.iter().map(Vec::len).collect();
        let sset = TruncatedSSet::new(cap, counts, faces, degens)?.with_labels(self.simplices.clone())?;
        let thin = self
            .thin
            .iter()
            .enumerate()
            .flat_map(|(d, row)| row.iter().map(move |l| (d, l)))
            .map(|(d, l)| resolve(d, l).map(|i| SimplexId::new(d, i)))
            .collect::<Result<Vec<_>>>()?;
        StratifiedSSet::make_stratified(Arc::new(sset), thin)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultKind {
    Verify,
    Tau,
    Tau0,
    Homotopy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// The output of an analysis command. Parameters hold every flag that can
/// change the payload; the thread count is not one of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument<P, Q> {
    pub format_version: u32,
    pub kind: ResultKind,
    pub tool: Tool,
    pub inputs: Vec<InputDigest>,
    pub parameters: P,
    pub payload: Q,
}

impl<P: Serialize, Q: Serialize> ResultDocument<P, Q> {
    pub fn new(kind: ResultKind, inputs: Vec<InputDigest>, parameters: P, payload: Q) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            kind,
            tool: Tool::default(),
            inputs,
            parameters,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }
}
