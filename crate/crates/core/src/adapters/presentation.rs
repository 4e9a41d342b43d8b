use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::category::FiniteCategory;
use crate::error::{Error, Result};

/// A monoid presentation `⟨generators | relations⟩`; words are lists of
/// generator names, the empty list being the unit.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

pub const DEFAULT_PRESENTATION_BOUND: usize = 4096;

/// Coset-style enumeration of the right Cayley graph, merging nodes as
/// relations force. Nodes are elements; node 0 is the unit.
struct Enumeration {
    gens: usize,
    edges: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    bound: usize,
}

impl Enumeration {
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn define(&mut self) -> Result<usize> {
        if self.live >= self.bound || self.parent.len() >= self.bound.saturating_mul(64) {
            return Err(Error::PresentationTooLarge(self.bound));
        }
        self.edges.push(vec![None; self.gens]);
        self.parent.push(self.parent.len());
        self.live += 1;
        Ok(self.parent.len() - 1)
    }

    fn step(&mut self, node: usize, g: usize) -> Result<usize> {
        let node = self.find(node);
        match self.edges[node][g] {
            Some(t) => Ok(self.find(t)),
            None => {
                let t = self.define()?;
                self.edges[node][g] = Some(t);
                Ok(t)
            }
        }
    }

    fn trace(&mut self, node: usize, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(self.find(node), |n, &g| self.step(n, g))
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            for g in 0..self.gens {
                if let Some(t) = self.edges[drop][g] {
                    match self.edges[keep][g] {
                        Some(u) => queue.push_back((t, u)),
                        None => self.edges[keep][g] = Some(t),
                    }
                }
            }
        }
    }
}

/// The finite monoid presented by `p`, as a one-object category. Elements
/// are named by their shortlex-least words (`1` for the unit).
pub fn monoid_from_presentation(p: &Presentation, bound: usize) -> Result<FiniteCategory> {
    let gen_idx: HashMap<&str, usize> = p.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    if gen_idx.len() != p.generators.len() {
        return Err(Error::Parse("duplicate generator".into()));
    }
    let word = |w: &[String]| -> Result<Vec<usize>> {
        w.iter()
            .map(|g| gen_idx.get(g.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown generator {g:?}"))))
            .collect()
    };
    let relations = p
        .relations
        .iter()
        .map(|(u, v)| Ok((word(u)?, word(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let gens = p.generators.len();
    let mut e = Enumeration {
        gens,
        edges: vec![vec![None; gens]],
        parent: vec![0],
        live: 1,
        bound: bound.max(1),
    };
    loop {
        let before = (e.parent.len(), e.live);
        let mut i = 0;
        while i < e.parent.len() {
            if e.find(i) == i {
                for g in 0..gens {
                    e.step(i, g)?;
                }
                for (u, v) in &relations {
                    if e.find(i) != i {
                        break;
                    }
                    let a = e.trace(i, u)?;
                    let b = e.trace(i, v)?;
                    e.coincide(a, b);
                }
            }
            i += 1;
        }
        let after = (e.parent.len(), e.live);
        if before == after {
            break;
        }
    }

    // number live nodes in shortlex order of their least words
    let root = e.find(0);
    let mut order = vec![root];
    let mut names = vec![Vec::<usize>::new()];
    let mut index: HashMap<usize, usize> = HashMap::from([(root, 0)]);
    let mut head = 0;
    while head < order.len() {
        let n = order[head];
        for g in 0..gens {
            let t = e.trace(n, &[g])?;
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(t) {
                slot.insert(order.len());
                order.push(t);
                let mut w = names[head].clone();
                w.push(g);
                names.push(w);
            }
        }
        head += 1;
    }
    let table = (0..order.len())
        .map(|a| {
            (0..order.len())
                .map(|b| Ok(index[&e.trace(order[a], &names[b])?]))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let sep = if p.generators.iter().all(|g| g.chars().count() == 1) { "" } else { "." };
    let labels = names
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&g| p.generators[g].as_str()).collect::<Vec<_>>().join(sep)
            }
        })
        .collect();
    FiniteCategory::from_monoid(labels, 0, table)
}
