//! Extension problems `A ↪ B`, `A -> X` solved by exhaustive depth-first
//! search, and the bounded check of the two lifting families that define a
//! weak complicial set.
//!
//! The solver walks the simplices of `B` in (dim, index) order. Degenerate
//! simplices are forced by the values one dimension down; every free
//! nondegenerate simplex draws its candidates from the simplices of `X` whose
//! face list matches the images of its faces, filtered by thinness. Since all
//! faces of a simplex live one dimension lower, candidates never depend on
//! choices made in the same dimension.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::{SimplexId, TruncatedSSet};
use crate::standard::{complicial_horn, delta_prime, HornInclusion};
use crate::strat::{StratifiedMap, StratifiedSSet};

/// Find all `g: B -> X` restricting to a given map on a subcomplex of `B`.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    source: Arc<StratifiedSSet>,
    target: Arc<StratifiedSSet>,
    pinned: Vec<Vec<Option<usize>>>,
}

impl ExtensionProblem {
    /// The problem given by an inclusion `A ↪ B` and a map `A -> X`.
    pub fn new(inclusion: &StratifiedMap, partial: &StratifiedMap) -> Result<Self> {
        if **inclusion.source() != **partial.source() {
            return Err(Error::MapMismatch);
        }
        if !inclusion.is_injective() {
            return Err(Error::NotWellDefined {
                simplex: "inclusion".into(),
                index: 0,
                detail: "not levelwise injective".into(),
            });
        }
        let source = inclusion.target().clone();
        let target = partial.target().clone();
        if target.cap() < source.cap() {
            return Err(Error::CapTooSmall {
                needed: source.cap(),
                cap: target.cap(),
            });
        }
        if inclusion.source().cap() != source.cap() {
            return Err(Error::MapMismatch);
        }
        let mut pinned: Vec<Vec<Option<usize>>> =
            source.sset().counts().iter().map(|&c| vec![None; c]).collect();
        for (d, row) in inclusion.table().iter().enumerate() {
            for (a, &b) in row.iter().enumerate() {
                pinned[d][b] = Some(partial.table()[d][a]);
            }
        }
        Ok(Self {
            source,
            target,
            pinned,
        })
    }

    /// The problem given directly by values on a subcomplex of `source`.
    /// The pinned simplices must be closed under faces and degeneracies and
    /// the pinned values must form a stratified map on them.
    pub fn with_pins(
        source: Arc<StratifiedSSet>,
        target: Arc<StratifiedSSet>,
        pinned: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let (b, x) = (source.sset(), target.sset());
        if target.cap() < source.cap() {
            return Err(Error::CapTooSmall {
                needed: source.cap(),
                cap: target.cap(),
            });
        }
        if pinned.len() != b.cap() + 1 || (0..=b.cap()).any(|d| pinned[d].len() != b.count(d)) {
            return Err(Error::TableShape("pin table does not match the source".into()));
        }
        let bad = |s: SimplexId, detail: &str| Error::NotWellDefined {
            simplex: b.label(s).to_string(),
            index: 0,
            detail: detail.into(),
        };
        for s in b.all_simplices() {
            let Some(v) = pinned[s.dim][s.index] else { continue };
            if v >= x.count(s.dim) {
                return Err(Error::DanglingReference {
                    what: "pinned value".into(),
                    dim: s.dim,
                    index: v,
                });
            }
            if source.is_thin(s) && !target.thin_idx(s.dim, v) {
                return Err(Error::NotStratified(b.label(s).to_string()));
            }
            if s.dim > 0 {
                for (i, &f) in b.faces_of(s.dim, s.index).iter().enumerate() {
                    match pinned[s.dim - 1][f] {
                        Some(fv) if fv == x.face_idx(s.dim, v, i) => {}
                        Some(_) => return Err(bad(s, "pinned values do not commute with faces")),
                        None => return Err(bad(s, "pinned simplices are not closed under faces")),
                    }
                }
            }
            if s.dim < b.cap() {
                for (i, &g) in b.degeneracies_of(s.dim, s.index).iter().enumerate() {
                    match pinned[s.dim + 1][g] {
                        Some(gv) if gv == x.degen_idx(s.dim, v, i) => {}
                        Some(_) => {
                            return Err(bad(s, "pinned values do not commute with degeneracies"))
                        }
                        None => {
                            return Err(bad(s, "pinned simplices are not closed under degeneracies"))
                        }
                    }
                }
            }
        }
        Ok(Self {
            source,
            target,
            pinned,
        })
    }

    pub fn source(&self) -> &Arc<StratifiedSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StratifiedSSet> {
        &self.target
    }

    /// Number of nondegenerate simplices left to choose.
    pub fn free_simplices(&self) -> usize {
        let b = self.source.sset();
        b.all_simplices()
            .filter(|s| self.pinned[s.dim][s.index].is_none() && !b.is_degenerate(*s))
            .count()
    }
}

enum Step {
    Degenerate(usize),
    Choose(usize, usize),
}

struct Search<'a> {
    b: &'a TruncatedSSet,
    bs: &'a StratifiedSSet,
    x: &'a TruncatedSSet,
    xs: &'a StratifiedSSet,
    pinned: &'a [Vec<Option<usize>>],
    steps: Vec<Step>,
    assign: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<Vec<Vec<usize>>>,
}

impl Search<'_> {
    fn run(&mut self, s: usize) -> ControlFlow<()> {
        let Some(step) = self.steps.get(s) else {
            self.found.push(self.assign.clone());
            return if self.found.len() >= self.limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            };
        };
        match *step {
            Step::Degenerate(d) => {
                for v in 0..self.b.count(d) {
                    if self.pinned[d][v].is_some() {
                        continue;
                    }
                    if let Some((y, i)) = self.b.degenerate_source_idx(d, v) {
                        self.assign[d][v] = self.x.degen_idx(d - 1, self.assign[d - 1][y], i);
                    }
                }
                self.run(s + 1)
            }
            Step::Choose(d, v) => {
                let need_thin = self.bs.thin_idx(d, v);
                let candidates: Vec<usize> = if d == 0 {
                    (0..self.x.count(0)).collect()
                } else {
                    let faces: Vec<usize> = self
                        .b
                        .faces_of(d, v)
                        .iter()
                        .map(|&f| self.assign[d - 1][f])
                        .collect();
                    self.x.with_faces(d, &faces).to_vec()
                };
                for c in candidates {
                    if need_thin && !self.xs.thin_idx(d, c) {
                        continue;
                    }
                    self.assign[d][v] = c;
                    self.run(s + 1)?;
                }
                ControlFlow::Continue(())
            }
        }
    }
}

/// All extensions of `problem`, in lexicographic order of the values chosen
/// for the free simplices, at most `limit` of them (`None` = unbounded).
pub fn find_extensions(problem: &ExtensionProblem, limit: Option<usize>) -> Vec<StratifiedMap> {
    let bs = &*problem.source;
    let b = bs.sset();
    let limit = limit.unwrap_or(usize::MAX);
    if limit == 0 {
        return Vec::new();
    }
    let mut steps = Vec::new();
    for d in 0..=b.cap() {
        if d > 0 {
            steps.push(Step::Degenerate(d));
        }
        for v in 0..b.count(d) {
            if problem.pinned[d][v].is_none() && b.degenerate_source_idx(d, v).is_none() {
                steps.push(Step::Choose(d, v));
            }
        }
    }
    let assign = problem
        .pinned
        .iter()
        .map(|row| row.iter().map(|p| p.unwrap_or(usize::MAX)).collect())
        .collect();
    let mut search = Search {
        b,
        bs,
        x: problem.target.sset(),
        xs: &problem.target,
        pinned: &problem.pinned,
        steps,
        assign,
        limit,
        found: Vec::new(),
    };
    let _ = search.run(0);
    search
        .found
        .into_iter()
        .map(|a| StratifiedMap::trusted(problem.source.clone(), problem.target.clone(), a))
        .collect()
}

/// The first extension in search order, if any.
pub fn first_extension(problem: &ExtensionProblem) -> Option<StratifiedMap> {
    find_extensions(problem, Some(1)).pop()
}

/// The map out of a horn determined by the images of its generating faces.
///
/// `faces` maps each face index `i ≠ k` to an `(n-1)`-simplex of `target`.
pub fn assemble_horn_map(
    horn: &HornInclusion,
    faces: &BTreeMap<usize, SimplexId>,
    target: &Arc<StratifiedSSet>,
) -> Result<StratifiedMap> {
    let h = &horn.horn;
    let (n, k) = (h.n(), horn.k);
    let x = target.sset();
    let expected: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    if faces.keys().copied().ne(expected.iter().copied()) {
        return Err(Error::TableShape(format!(
            "horn Λ^{k}[{n}] needs exactly the faces {expected:?}"
        )));
    }
    if let Some((_, bad)) = faces.iter().find(|(_, s)| s.dim + 1 != n || !x.contains(**s)) {
        return Err(Error::DanglingReference {
            what: "horn face assignment".into(),
            dim: bad.dim,
            index: bad.index,
        });
    }
    if x.cap() < h.cap() {
        return Err(Error::CapTooSmall {
            needed: h.cap(),
            cap: x.cap(),
        });
    }
    let hs = h.sset();
    let mut assign = Vec::with_capacity(hs.cap() + 1);
    let mut reduced = Vec::with_capacity(hs.cap() + 1);
    for d in 0..=hs.cap() {
        let mut row = Vec::with_capacity(hs.count(d));
        for a in hs.simplices(d) {
            let values = h.map_of(a).values();
            let mask = h.map_of(a).image_mask();
            let mut value: Option<(usize, usize)> = None;
            for (&i, &xi) in faces {
                if mask & (1 << i) != 0 {
                    continue;
                }
                // α = δ_i ∘ α'
                reduced.clear();
                reduced.extend(values.iter().map(|&v| if v > i { v - 1 } else { v }));
                let y = x.pullback_idx(n - 1, xi.index, &reduced);
                match value {
                    None => value = Some((i, y)),
                    Some((first, prev)) if prev != y => {
                        return Err(Error::BoundaryMismatch { first, second: i });
                    }
                    Some(_) => {}
                }
            }
            row.push(value.expect("every horn simplex lies in a generating face").1);
        }
        assign.push(row);
    }
    for a in hs.all_simplices() {
        if h.complex().is_thin(a) && !target.is_thin(SimplexId::new(a.dim, assign[a.dim][a.index])) {
            return Err(Error::ThinnessViolation(hs.label(a).to_string()));
        }
    }
    Ok(StratifiedMap::trusted(h.complex().clone(), target.clone(), assign))
}

/// Calls `visit` with every stratified map from the horn into `target`,
/// enumerated through compatible face assignments in lexicographic order.
pub fn for_each_horn_map(
    horn: &HornInclusion,
    target: &Arc<StratifiedSSet>,
    mut visit: impl FnMut(&BTreeMap<usize, SimplexId>, StratifiedMap) -> ControlFlow<()>,
) {
    let n = horn.horn.n();
    let positions: Vec<usize> = (0..=n).filter(|&i| i != horn.k).collect();
    let x = target.sset();
    let mut chosen: Vec<usize> = Vec::with_capacity(positions.len());

    fn go(
        depth: usize,
        positions: &[usize],
        chosen: &mut Vec<usize>,
        x: &TruncatedSSet,
        n: usize,
        emit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == positions.len() {
            return emit(chosen);
        }
        let i = positions[depth];
        for c in 0..x.count(n - 1) {
            // d_j x_i = d_{i-1} x_j for every earlier j < i
            let compatible = n < 2
                || positions[..depth].iter().zip(chosen.iter()).all(|(&j, &xj)| {
                    x.face_idx(n - 1, c, j) == x.face_idx(n - 1, xj, i - 1)
                });
            if compatible {
                chosen.push(c);
                let flow = go(depth + 1, positions, chosen, x, n, emit);
                chosen.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    let mut emit = |vals: &[usize]| {
        let faces: BTreeMap<usize, SimplexId> = positions
            .iter()
            .zip(vals)
            .map(|(&i, &v)| (i, SimplexId::new(n - 1, v)))
            .collect();
        match assemble_horn_map(horn, &faces, target) {
            Ok(map) => visit(&faces, map),
            Err(Error::ThinnessViolation(_)) => ControlFlow::Continue(()),
            Err(e) => unreachable!("compatible faces assemble: {e}"),
        }
    };
    let _ = go(0, &positions, &mut chosen, x, n, &mut emit);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Λ^k[n] ↪ Δ^k[n]`, `n >= 1`.
    HornFilling,
    /// `Δ^k[n]' ↪ Δ^k[n]''`, `n >= 2`.
    ThinExtension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// An unfillable horn, given by its face assignment.
    Horn { faces: Vec<(usize, SimplexId)> },
    /// An `n`-simplex whose `δ_k` face should be thin but is not.
    Simplex { simplex: SimplexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub instances: usize,
    pub failures: Vec<Witness>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checked_dims: usize,
    pub entries: Vec<InstanceReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(InstanceReport::passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &InstanceReport> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn entry(&self, family: Family, k: usize, n: usize) -> Option<&InstanceReport> {
        self.entries
            .iter()
            .find(|e| e.family == family && e.k == k && e.n == n)
    }
}

/// Checks that every map from the horn extends over the simplex.
pub fn check_horn(target: &Arc<StratifiedSSet>, horn: &HornInclusion) -> InstanceReport {
    let mut instances = 0;
    let mut failures = Vec::new();
    for_each_horn_map(horn, target, |faces, map| {
        instances += 1;
        let problem = ExtensionProblem::new(&horn.inclusion, &map).expect("horn problem is well formed");
        if first_extension(&problem).is_none() {
            failures.push(Witness::Horn {
                faces: faces.iter().map(|(&i, &s)| (i, s)).collect(),
            });
        }
        ControlFlow::Continue(())
    });
    InstanceReport {
        family: Family::HornFilling,
        n: horn.horn.n(),
        k: horn.k,
        instances,
        failures,
    }
}

/// `Δ^k[n]' ↪ Δ^k[n]''` is the identity on underlying sets, so an instance
/// is an `n`-simplex `σ` whose `Δ^k[n]'`-thin faces are thin, and it lifts
/// iff `d_k σ` is thin as well.
pub fn check_thin_extension(target: &StratifiedSSet, k: usize, n: usize) -> Result<InstanceReport> {
    let prime = delta_prime(k, n, n)?;
    let thin_maps: Vec<Vec<usize>> = prime
        .complex()
        .nondegenerate_thin()
        .into_iter()
        .map(|a| prime.map_of(a).values().to_vec())
        .collect();
    let x = target.sset();
    let mut instances = 0;
    let mut failures = Vec::new();
    for s in 0..x.count(n) {
        let all_thin = thin_maps.iter().all(|v| {
            let m = v.len() - 1;
            target.thin_idx(m, x.pullback_idx(n, s, v))
        });
        if !all_thin {
            continue;
        }
        instances += 1;
        if !target.thin_idx(n - 1, x.face_idx(n, s, k)) {
            failures.push(Witness::Simplex {
                simplex: SimplexId::new(n, s),
            });
        }
    }
    Ok(InstanceReport {
        family: Family::ThinExtension,
        n,
        k,
        instances,
        failures,
    })
}

/// Checks both lifting families for every `n <= bound`. Instance checks run
/// in parallel; entries come back in (family, n, k) order regardless.
pub fn verify_weak_complicial(x: &Arc<StratifiedSSet>, bound: usize) -> Result<VerificationReport> {
    if bound > x.cap() {
        return Err(Error::BoundExceedsCap {
            bound,
            cap: x.cap(),
        });
    }
    let mut jobs = Vec::new();
    for n in 1..=bound {
        for k in 0..=n {
            jobs.push((Family::HornFilling, n, k));
        }
    }
    for n in 2..=bound {
        for k in 0..=n {
            jobs.push((Family::ThinExtension, n, k));
        }
    }
    let entries = jobs
        .into_par_iter()
        .map(|(family, n, k)| match family {
            Family::HornFilling => Ok(check_horn(x, &complicial_horn(k, n, n)?)),
            Family::ThinExtension => check_thin_extension(x, k, n),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        checked_dims: bound,
        entries,
    })
}
