//! Standard simplices, their boundaries and horns, and the complicial
//! stratifications on them.
//!
//! Every simplex of a standard complex is a weakly monotone map `[m] -> [n]`
//! and is keyed by its value list, so ids are stable across runs. Faces are
//! precomposition with cofaces (drop an entry), degeneracies precomposition
//! with codegeneracies (repeat an entry).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::{SimplexId, TruncatedSSet};
use crate::strat::{regular_subset, StratifiedMap, StratifiedSSet};

/// A weakly monotone map `[m] -> [target]`, stored as its `m + 1` values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > target)
        {
            return Err(Error::Parse(format!(
                "{values:?} is not a monotone map into [{target}]"
            )));
        }
        Ok(Self { target, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `δ_i: [n-1] -> [n]` that skips `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        Self {
            target: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn image_mask(&self) -> u64 {
        self.values.iter().fold(0, |m, &v| m | (1 << v))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask() == full_mask(self.target)
    }

    pub fn label(&self) -> String {
        label_of(&self.values, self.target)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn full_mask(n: usize) -> u64 {
    (1u64 << (n + 1)) - 1
}

fn label_of(values: &[usize], target: usize) -> String {
    if target < 10 {
        values.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

/// `{k-1, k, k+1} ∩ [n]` as a bit mask.
fn complicial_mask(k: usize, n: usize) -> u64 {
    let lo = k.saturating_sub(1);
    let hi = (k + 1).min(n);
    (lo..=hi).fold(0, |m, v| m | (1 << v))
}

/// All weakly monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for v in start..=n {
            cur.push(v);
            go(m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::with_capacity(m + 1), &mut out);
    out
}

/// A stratified complex whose simplices are monotone maps into `[n]`.
#[derive(Clone, Debug)]
pub struct StandardComplex {
    n: usize,
    complex: Arc<StratifiedSSet>,
    maps: Vec<Vec<MonotoneMap>>,
    lookup: HashMap<Vec<usize>, SimplexId>,
}

impl StandardComplex {
    fn from_maps(
        cap: usize,
        maps: &[Vec<MonotoneMap>],
    ) -> (Arc<TruncatedSSet>, HashMap<Vec<usize>, SimplexId>) {
        let mut lookup = HashMap::new();
        for (d, row) in maps.iter().enumerate() {
            for (i, a) in row.iter().enumerate() {
                lookup.insert(a.values.clone(), SimplexId::new(d, i));
            }
        }
        let find = |v: Vec<usize>| lookup[&v].index;
        let counts = maps.iter().map(Vec::len).collect();
        let faces = (0..=cap)
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                maps[d]
                    .iter()
                    .flat_map(|a| {
                        (0..=d).map(|i| {
                            let mut v = a.values.clone();
                            v.remove(i);
                            find(v)
                        })
                    })
                    .collect()
            })
            .collect();
        let degens = (0..=cap)
            .map(|d| {
                if d == cap {
                    return Vec::new();
                }
                maps[d]
                    .iter()
                    .flat_map(|a| {
                        (0..=d).map(|i| {
                            let mut v = a.values.clone();
                            v.insert(i, a.values[i]);
                            find(v)
                        })
                    })
                    .collect()
            })
            .collect();
        let labels = maps
            .iter()
            .map(|row| row.iter().map(MonotoneMap::label).collect())
            .collect();
        let sset = TruncatedSSet::assemble(cap, counts, faces, degens, labels);
        (Arc::new(sset), lookup)
    }

    fn build(n: usize, cap: usize, keep: impl Fn(&[usize]) -> bool) -> Self {
        let maps: Vec<Vec<MonotoneMap>> = (0..=cap)
            .map(|m| {
                monotone_maps(m, n)
                    .into_iter()
                    .filter(|v| keep(v))
                    .map(|values| MonotoneMap { target: n, values })
                    .collect()
            })
            .collect();
        let (sset, lookup) = Self::from_maps(cap, &maps);
        Self {
            n,
            complex: Arc::new(StratifiedSSet::min_strat(sset)),
            maps,
            lookup,
        }
    }

    /// Same underlying simplicial set, thin set = degenerates plus every
    /// simplex satisfying `pred`.
    pub fn restratify(&self, pred: impl Fn(&MonotoneMap) -> bool) -> Self {
        let strat = StratifiedSSet::from_predicate(self.complex.sset().clone(), |x| {
            pred(&self.maps[x.dim][x.index])
        });
        Self {
            n: self.n,
            complex: Arc::new(strat),
            maps: self.maps.clone(),
            lookup: self.lookup.clone(),
        }
    }

    /// Keeps the current thin set and adds every simplex satisfying `pred`.
    fn add_thin(&self, pred: impl Fn(&MonotoneMap) -> bool) -> Self {
        let current = self.complex.clone();
        self.restratify(|a| {
            let id = self.lookup[&a.values];
            current.is_thin(id) || pred(a)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.complex.cap()
    }

    pub fn complex(&self) -> &Arc<StratifiedSSet> {
        &self.complex
    }

    pub fn sset(&self) -> &Arc<TruncatedSSet> {
        self.complex.sset()
    }

    pub fn map_of(&self, x: SimplexId) -> &MonotoneMap {
        &self.maps[x.dim][x.index]
    }

    pub fn simplex(&self, values: &[usize]) -> Option<SimplexId> {
        self.lookup.get(values).copied()
    }

    /// `Id_[n]`, when present.
    pub fn top(&self) -> Option<SimplexId> {
        self.simplex(MonotoneMap::identity(self.n).values())
    }

    /// The face `δ_i` of `Id_[n]`, when present.
    pub fn coface(&self, i: usize) -> Option<SimplexId> {
        self.simplex(MonotoneMap::coface(self.n, i).values())
    }

    /// The stratified map `Δ[n] -> X` picking out `sigma`, on this complex
    /// (which must be a subcomplex of `Δ[n]`).
    pub fn yoneda(&self, target: &Arc<StratifiedSSet>, sigma: SimplexId) -> Result<StratifiedMap> {
        if sigma.dim != self.n {
            return Err(Error::IndexOutOfRange {
                index: sigma.dim,
                dim: self.n,
            });
        }
        if target.cap() < self.cap() {
            return Err(Error::CapTooSmall {
                needed: self.cap(),
                cap: target.cap(),
            });
        }
        let x = target.sset();
        let assign = self
            .maps
            .iter()
            .map(|row| {
                row.iter()
                    .map(|a| x.pullback_idx(sigma.dim, sigma.index, &a.values))
                    .collect()
            })
            .collect();
        StratifiedMap::new(self.complex.clone(), target.clone(), assign)
    }
}

fn need_cap(needed: usize, cap: usize) -> Result<()> {
    if cap < needed {
        Err(Error::CapTooSmall { needed, cap })
    } else {
        Ok(())
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        Err(Error::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// `Δ[n]` with the minimal stratification.
pub fn delta(n: usize, cap: usize) -> Result<StandardComplex> {
    need_cap(n, cap)?;
    Ok(StandardComplex::build(n, cap, |_| true))
}

/// `∂Δ[n]`: every simplex of `Δ[n]` without full image. Empty for `n = 0`.
pub fn boundary(n: usize, cap: usize) -> Result<StandardComplex> {
    need_cap(n.saturating_sub(1), cap)?;
    let full = full_mask(n);
    Ok(StandardComplex::build(n, cap, |v| {
        v.iter().fold(0u64, |m, &x| m | (1 << x)) != full
    }))
}

/// `Δ[n]_t`: the top simplex is thin as well (for `n > 0`).
pub fn delta_t(n: usize, cap: usize) -> Result<StandardComplex> {
    let d = delta(n, cap)?;
    Ok(if n == 0 {
        d
    } else {
        d.restratify(|a| a.dim() == n && a.is_injective())
    })
}

/// `Δ^k[n]`: `α` is thin iff degenerate or `{k-1, k, k+1} ∩ [n] ⊆ Im(α)`.
///
/// For `n = 0` the predicate would mark the vertex, which no stratification
/// allows; vertices are never thin, so `Δ^0[0] = Δ[0]`.
pub fn complicial_delta(k: usize, n: usize, cap: usize) -> Result<StandardComplex> {
    check_k(k, n)?;
    let d = delta(n, cap)?;
    let required = complicial_mask(k, n);
    Ok(d.restratify(|a| a.image_mask() & required == required))
}

/// An inclusion of standard complexes, horn into simplex.
#[derive(Clone, Debug)]
pub struct HornInclusion {
    pub k: usize,
    pub horn: StandardComplex,
    pub simplex: StandardComplex,
    pub inclusion: StratifiedMap,
}

fn horn_of(k: usize, simplex: StandardComplex) -> Result<HornInclusion> {
    let n = simplex.n;
    let gens: Vec<SimplexId> = (0..=n)
        .filter(|&i| i != k)
        .map(|i| simplex.coface(i).expect("cap >= n"))
        .collect();
    let (sub, inclusion) = regular_subset(&simplex.complex, &gens)?;
    let maps: Vec<Vec<MonotoneMap>> = inclusion
        .table()
        .iter()
        .enumerate()
        .map(|(d, row)| row.iter().map(|&x| simplex.maps[d][x].clone()).collect())
        .collect();
    let mut lookup = HashMap::new();
    for (d, row) in maps.iter().enumerate() {
        for (i, a) in row.iter().enumerate() {
            lookup.insert(a.values.clone(), SimplexId::new(d, i));
        }
    }
    let horn = StandardComplex {
        n,
        complex: sub,
        maps,
        lookup,
    };
    Ok(HornInclusion {
        k,
        horn,
        simplex,
        inclusion,
    })
}

/// `Λ^k[n] ↪ Δ^k[n]`: the regular subset generated by the faces `δ_i`, `i ≠ k`.
pub fn complicial_horn(k: usize, n: usize, cap: usize) -> Result<HornInclusion> {
    if n == 0 {
        return Err(Error::CapTooSmall { needed: 1, cap: n });
    }
    horn_of(k, complicial_delta(k, n, cap)?)
}

/// The simplicial horn `Λ^k[n] ↪ Δ[n]`, both minimally stratified.
pub fn simplicial_horn(k: usize, n: usize, cap: usize) -> Result<HornInclusion> {
    check_k(k, n)?;
    if n == 0 {
        return Err(Error::CapTooSmall { needed: 1, cap: n });
    }
    horn_of(k, delta(n, cap)?)
}

fn check_prime(k: usize, n: usize) -> Result<()> {
    check_k(k, n)?;
    if n < 2 {
        return Err(Error::PrimeNeedsDimTwo(n));
    }
    Ok(())
}

/// `Λ^k[n]'`: the complicial horn with every `(n-1)`-simplex thin.
pub fn horn_prime(k: usize, n: usize, cap: usize) -> Result<StandardComplex> {
    check_prime(k, n)?;
    let h = complicial_horn(k, n, cap)?.horn;
    Ok(h.add_thin(|a| a.dim() == n - 1))
}

/// `Δ^k[n]''`: `Δ^k[n]` with every `(n-1)`-simplex thin.
pub fn delta_dprime(k: usize, n: usize, cap: usize) -> Result<StandardComplex> {
    check_prime(k, n)?;
    Ok(complicial_delta(k, n, cap)?.add_thin(|a| a.dim() == n - 1))
}

/// `Δ^k[n]' = Δ^k[n] ∪ Λ^k[n]'`, read as the union of thin sets on the
/// underlying `Δ[n]`: every `(n-1)`-simplex except `δ_k` becomes thin.
pub fn delta_prime(k: usize, n: usize, cap: usize) -> Result<StandardComplex> {
    check_prime(k, n)?;
    let skip = MonotoneMap::coface(n, k);
    Ok(complicial_delta(k, n, cap)?.add_thin(|a| a.dim() == n - 1 && *a != skip))
}
