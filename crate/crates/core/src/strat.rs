//! Stratified simplicial sets: a simplicial set with a set of thin simplices
//! containing every degenerate simplex and no vertex.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::{check_commutes, SimplexId, SimplicialMap, TruncatedSSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedSSet {
    sset: Arc<TruncatedSSet>,
    thin: Vec<Vec<bool>>,
}

impl StratifiedSSet {
    /// Marks `thin` (closed under degenerate simplices) as the thin set.
    pub fn make_stratified(
        sset: Arc<TruncatedSSet>,
        thin: impl IntoIterator<Item = SimplexId>,
    ) -> Result<Self> {
        let mut marks: Vec<Vec<bool>> = sset.counts().iter().map(|&c| vec![false; c]).collect();
        for x in thin {
            if !sset.contains(x) {
                return Err(Error::DanglingReference {
                    what: "thin set".into(),
                    dim: x.dim,
                    index: x.index,
                });
            }
            if x.dim == 0 {
                return Err(Error::ThinVertex(sset.label(x).to_string()));
            }
            marks[x.dim][x.index] = true;
        }
        Ok(Self::closed(sset, marks))
    }

    /// Thin set given by a predicate on positive-dimensional simplices.
    pub(crate) fn from_predicate(
        sset: Arc<TruncatedSSet>,
        mut pred: impl FnMut(SimplexId) -> bool,
    ) -> Self {
        let marks = sset
            .counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| (0..c).map(|i| d > 0 && pred(SimplexId::new(d, i))).collect())
            .collect();
        Self::closed(sset, marks)
    }

    fn closed(sset: Arc<TruncatedSSet>, mut marks: Vec<Vec<bool>>) -> Self {
        for x in sset.all_simplices() {
            if sset.is_degenerate(x) {
                marks[x.dim][x.index] = true;
            }
        }
        Self { sset, thin: marks }
    }

    /// Only the degenerate simplices are thin.
    pub fn min_strat(sset: Arc<TruncatedSSet>) -> Self {
        Self::from_predicate(sset, |_| false)
    }

    /// Every simplex of positive dimension is thin.
    pub fn max_strat(sset: Arc<TruncatedSSet>) -> Self {
        Self::from_predicate(sset, |_| true)
    }

    /// Same underlying set with additional thin simplices.
    pub fn with_extra_thin(&self, extra: impl IntoIterator<Item = SimplexId>) -> Result<Self> {
        let current = self.thin_simplices();
        Self::make_stratified(self.sset.clone(), current.into_iter().chain(extra))
    }

    pub fn sset(&self) -> &Arc<TruncatedSSet> {
        &self.sset
    }

    pub fn cap(&self) -> usize {
        self.sset.cap()
    }

    pub fn is_thin(&self, x: SimplexId) -> bool {
        self.thin[x.dim][x.index]
    }

    pub(crate) fn thin_idx(&self, dim: usize, x: usize) -> bool {
        self.thin[dim][x]
    }

    pub fn thin_simplices(&self) -> Vec<SimplexId> {
        self.sset.all_simplices().filter(|&x| self.is_thin(x)).collect()
    }

    /// Thin simplices that are not degenerate.
    pub fn nondegenerate_thin(&self) -> Vec<SimplexId> {
        self.sset
            .all_simplices()
            .filter(|&x| self.is_thin(x) && !self.sset.is_degenerate(x))
            .collect()
    }

    /// Checks `dX ⊆ tX` and `tX ∩ X_0 = ∅`.
    pub fn satisfies_axioms(&self) -> bool {
        self.sset.simplices(0).all(|v| !self.is_thin(v))
            && self
                .sset
                .all_simplices()
                .all(|x| !self.sset.is_degenerate(x) || self.is_thin(x))
    }
}

/// A simplicial map that sends thin simplices to thin simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedMap {
    source: Arc<StratifiedSSet>,
    target: Arc<StratifiedSSet>,
    assign: Vec<Vec<usize>>,
}

fn check_thin(source: &StratifiedSSet, target: &StratifiedSSet, assign: &[Vec<usize>]) -> Result<()> {
    for (d, row) in assign.iter().enumerate() {
        for (x, &y) in row.iter().enumerate() {
            if source.thin[d][x] && !target.thin[d][y] {
                return Err(Error::NotStratified(
                    source.sset.label(SimplexId::new(d, x)).to_string(),
                ));
            }
        }
    }
    Ok(())
}

impl StratifiedMap {
    pub fn new(
        source: Arc<StratifiedSSet>,
        target: Arc<StratifiedSSet>,
        assign: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_commutes(&source.sset, &target.sset, &assign)?;
        check_thin(&source, &target, &assign)?;
        Ok(Self {
            source,
            target,
            assign,
        })
    }

    /// Extends an assignment on generators; see [`SimplicialMap::build`].
    pub fn build(
        source: Arc<StratifiedSSet>,
        target: Arc<StratifiedSSet>,
        generators: &[(SimplexId, SimplexId)],
    ) -> Result<Self> {
        let assign = crate::sset::propagate(&source.sset, &target.sset, generators)?;
        Self::new(source, target, assign)
    }

    /// Skips validation; callers guarantee commutation and thinness.
    pub(crate) fn trusted(
        source: Arc<StratifiedSSet>,
        target: Arc<StratifiedSSet>,
        assign: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(check_commutes(&source.sset, &target.sset, &assign).is_ok());
        Self {
            source,
            target,
            assign,
        }
    }

    pub fn identity(x: Arc<StratifiedSSet>) -> Self {
        let assign = x.sset.counts().iter().map(|&c| (0..c).collect()).collect();
        Self {
            source: x.clone(),
            target: x,
            assign,
        }
    }

    pub fn source(&self) -> &Arc<StratifiedSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StratifiedSSet> {
        &self.target
    }

    pub fn apply(&self, x: SimplexId) -> SimplexId {
        SimplexId::new(x.dim, self.assign[x.dim][x.index])
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.assign
    }

    pub fn underlying(&self) -> SimplicialMap {
        SimplicialMap::from_table(
            self.source.sset.clone(),
            self.target.sset.clone(),
            self.assign.clone(),
        )
        .expect("stratified maps commute")
    }

    /// Re-runs every check from scratch.
    pub fn revalidate(&self) -> Result<()> {
        check_commutes(&self.source.sset, &self.target.sset, &self.assign)?;
        check_thin(&self.source, &self.target, &self.assign)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &StratifiedMap) -> Result<StratifiedMap> {
        if *self.target != *other.source {
            return Err(Error::MapMismatch);
        }
        let top = self.assign.len().min(other.assign.len());
        let assign = (0..top)
            .map(|d| self.assign[d].iter().map(|&y| other.assign[d][y]).collect())
            .collect();
        Ok(StratifiedMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assign,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.assign.iter().all(|row| {
            let set: BTreeSet<_> = row.iter().collect();
            set.len() == row.len()
        })
    }
}

/// The smallest simplicial subset of `ambient` containing `generators`, with
/// the induced (regular) stratification, together with its inclusion.
pub fn regular_subset(
    ambient: &Arc<StratifiedSSet>,
    generators: &[SimplexId],
) -> Result<(Arc<StratifiedSSet>, StratifiedMap)> {
    let y = ambient.sset();
    let cap = y.cap();
    let mut keep: Vec<Vec<bool>> = y.counts().iter().map(|&c| vec![false; c]).collect();
    let mut stack = Vec::new();
    for &g in generators {
        if !y.contains(g) {
            return Err(Error::DanglingReference {
                what: "regular subset generator".into(),
                dim: g.dim,
                index: g.index,
            });
        }
        stack.push(g);
    }
    while let Some(x) = stack.pop() {
        if keep[x.dim][x.index] {
            continue;
        }
        keep[x.dim][x.index] = true;
        if x.dim > 0 {
            for &f in y.faces_of(x.dim, x.index) {
                stack.push(SimplexId::new(x.dim - 1, f));
            }
        }
        if x.dim < cap {
            for &s in y.degeneracies_of(x.dim, x.index) {
                stack.push(SimplexId::new(x.dim + 1, s));
            }
        }
    }
    let old_to_new: Vec<Vec<Option<usize>>> = keep
        .iter()
        .map(|row| {
            let mut next = 0;
            row.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let kept: Vec<Vec<usize>> = keep
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect())
        .collect();
    let counts: Vec<usize> = kept.iter().map(Vec::len).collect();
    let renumber = |dim: usize, x: usize| old_to_new[dim][x].expect("closed under faces");
    let faces = (0..=cap)
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            kept[d]
                .iter()
                .flat_map(|&x| y.faces_of(d, x).iter().map(move |&f| renumber(d - 1, f)))
                .collect()
        })
        .collect();
    let degens = (0..=cap)
        .map(|d| {
            if d == cap {
                return Vec::new();
            }
            kept[d]
                .iter()
                .flat_map(|&x| y.degeneracies_of(d, x).iter().map(move |&s| renumber(d + 1, s)))
                .collect()
        })
        .collect();
    let labels = kept
        .iter()
        .enumerate()
        .map(|(d, row)| row.iter().map(|&x| y.label(SimplexId::new(d, x)).to_string()).collect())
        .collect();
    let sub = Arc::new(TruncatedSSet::assemble(cap, counts, faces, degens, labels));
    let thin = kept
        .iter()
        .enumerate()
        .map(|(d, row)| row.iter().map(|&x| ambient.thin[d][x]).collect())
        .collect();
    let sub = Arc::new(StratifiedSSet { sset: sub, thin });
    let inclusion = StratifiedMap::trusted(sub.clone(), ambient.clone(), kept);
    Ok((sub, inclusion))
}

/// Levelwise product with componentwise thinness, plus the bookkeeping to
/// split a product simplex into its components.
#[derive(Clone, Debug)]
pub struct Product {
    complex: Arc<StratifiedSSet>,
    right_counts: Vec<usize>,
}

impl Product {
    pub fn complex(&self) -> &Arc<StratifiedSSet> {
        &self.complex
    }

    /// Components `(x, y)` of a product simplex.
    pub fn split(&self, p: SimplexId) -> (SimplexId, SimplexId) {
        let r = self.right_counts[p.dim];
        (
            SimplexId::new(p.dim, p.index / r),
            SimplexId::new(p.dim, p.index % r),
        )
    }

    pub fn pair(&self, x: SimplexId, y: SimplexId) -> SimplexId {
        debug_assert_eq!(x.dim, y.dim);
        SimplexId::new(x.dim, x.index * self.right_counts[x.dim] + y.index)
    }
}

/// The product `X ⊛ Y`, truncated at the smaller cap. Simplices are ordered
/// lexicographically by component indices.
pub fn gproduct(x: &StratifiedSSet, y: &StratifiedSSet) -> Product {
    let (xs, ys) = (x.sset(), y.sset());
    let cap = xs.cap().min(ys.cap());
    let counts: Vec<usize> = (0..=cap).map(|d| xs.count(d) * ys.count(d)).collect();
    let rc: Vec<usize> = (0..=cap).map(|d| ys.count(d)).collect();
    let mut faces = vec![Vec::new(); cap + 1];
    let mut degens = vec![Vec::new(); cap + 1];
    let mut labels = vec![Vec::new(); cap + 1];
    let mut thin = vec![Vec::new(); cap + 1];
    for d in 0..=cap {
        for a in 0..xs.count(d) {
            for b in 0..ys.count(d) {
                if d > 0 {
                    for i in 0..=d {
                        faces[d].push(xs.face_idx(d, a, i) * rc[d - 1] + ys.face_idx(d, b, i));
                    }
                }
                if d < cap {
                    for i in 0..=d {
                        degens[d].push(xs.degen_idx(d, a, i) * rc[d + 1] + ys.degen_idx(d, b, i));
                    }
                }
                labels[d].push(format!(
                    "({}|{})",
                    xs.label(SimplexId::new(d, a)),
                    ys.label(SimplexId::new(d, b))
                ));
                thin[d].push(x.thin[d][a] && y.thin[d][b]);
            }
        }
    }
    let sset = Arc::new(TruncatedSSet::assemble(cap, counts, faces, degens, labels));
    Product {
        complex: Arc::new(StratifiedSSet { sset, thin }),
        right_counts: rc,
    }
}
