//! Dimension-truncated simplicial sets presented by explicit face and
//! degeneracy tables, and simplicial maps between them.
//!
//! A [`TruncatedSSet`] stores every simplex (degenerate ones included) of
//! dimension `0..=cap`. Faces are tabulated for dimensions `1..=cap` and
//! degeneracies for `0..cap`; every simplicial identity whose two sides lie
//! inside the cap is checked when the presentation is built.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a simplex inside one presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// A simplicial set truncated at `cap`.
#[derive(Clone)]
pub struct TruncatedSSet {
    cap: usize,
    counts: Vec<usize>,
    // faces[n] is flat with stride n + 1; faces[0] is empty.
    faces: Vec<Vec<usize>>,
    // degens[n] is flat with stride n + 1; degens[cap] is empty.
    degens: Vec<Vec<usize>>,
    labels: Vec<Vec<String>>,
    degenerate_of: Vec<Vec<Option<(usize, usize)>>>,
    by_faces: Vec<OnceLock<HashMap<Vec<usize>, Vec<usize>>>>,
}

impl fmt::Debug for TruncatedSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSSet")
            .field("cap", &self.cap)
            .field("counts", &self.counts)
            .finish_non_exhaustive()
    }
}

impl PartialEq for TruncatedSSet {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap
            && self.counts == other.counts
            && self.faces == other.faces
            && self.degens == other.degens
            && self.labels == other.labels
    }
}

impl Eq for TruncatedSSet {}

fn row_table(
    table: Vec<Vec<Vec<usize>>>,
    cap: usize,
    counts: &[usize],
    kind: &str,
) -> Result<Vec<Vec<usize>>> {
    if table.len() != cap + 1 {
        return Err(Error::TableShape(format!(
            "{kind} table has {} dimensions, expected {}",
            table.len(),
            cap + 1
        )));
    }
    let mut flat = Vec::with_capacity(cap + 1);
    for (n, rows) in table.into_iter().enumerate() {
        let defined = match kind {
            "face" => n >= 1,
            _ => n < cap,
        };
        if !defined {
            if rows.iter().any(|r| !r.is_empty()) {
                return Err(Error::TableShape(format!(
                    "{kind} table must be empty in dim {n}"
                )));
            }
            flat.push(Vec::new());
            continue;
        }
        if rows.len() != counts[n] {
            return Err(Error::TableShape(format!(
                "{kind} table has {} rows in dim {n}, expected {}",
                rows.len(),
                counts[n]
            )));
        }
        let target_dim = if kind == "face" { n - 1 } else { n + 1 };
        let mut out = Vec::with_capacity(counts[n] * (n + 1));
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::TableShape(format!(
                    "{kind} row of simplex {n}:{x} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
            for &y in &row {
                if y >= counts[target_dim] {
                    return Err(Error::DanglingReference {
                        what: format!("{kind} of {n}:{x}"),
                        dim: target_dim,
                        index: y,
                    });
                }
            }
            out.extend(row);
        }
        flat.push(out);
    }
    Ok(flat)
}

impl TruncatedSSet {
    /// Builds and validates a presentation.
    ///
    /// `faces[n][x]` lists `d_0 x, ..., d_n x` for `1 <= n <= cap` and
    /// `degeneracies[n][x]` lists `s_0 x, ..., s_n x` for `n < cap`. Rows for
    /// dimension 0 faces and cap-dimension degeneracies must be empty (or the
    /// dimension may have no rows at all).
    pub fn new(
        cap: usize,
        counts: Vec<usize>,
        mut faces: Vec<Vec<Vec<usize>>>,
        mut degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if counts.len() != cap + 1 {
            return Err(Error::TableShape(format!(
                "{} counts given for cap {cap}",
                counts.len()
            )));
        }
        if faces.first().is_some_and(|r| r.is_empty()) {
            faces[0] = vec![Vec::new(); counts[0]];
        }
        if degeneracies.len() == cap + 1 && degeneracies[cap].is_empty() {
            degeneracies[cap] = vec![Vec::new(); counts[cap]];
        }
        let faces = row_table(faces, cap, &counts, "face")?;
        let degens = row_table(degeneracies, cap, &counts, "degeneracy")?;
        let labels = counts
            .iter()
            .map(|&c| (0..c).map(|i| i.to_string()).collect())
            .collect();
        let sset = Self::assemble(cap, counts, faces, degens, labels);
        sset.check_identities()?;
        Ok(sset)
    }

    pub(crate) fn assemble(
        cap: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<usize>>,
        degens: Vec<Vec<usize>>,
        labels: Vec<Vec<String>>,
    ) -> Self {
        let mut degenerate_of: Vec<Vec<Option<(usize, usize)>>> =
            counts.iter().map(|&c| vec![None; c]).collect();
        for n in 0..cap {
            for y in 0..counts[n] {
                for i in 0..=n {
                    let x = degens[n][y * (n + 1) + i];
                    let slot = &mut degenerate_of[n + 1][x];
                    if slot.is_none() {
                        *slot = Some((y, i));
                    }
                }
            }
        }
        Self {
            cap,
            by_faces: (0..=cap).map(|_| OnceLock::new()).collect(),
            counts,
            faces,
            degens,
            labels,
            degenerate_of,
        }
    }

    /// Replaces the display labels; labels must be unique within a dimension.
    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.cap + 1
            || labels.iter().zip(&self.counts).any(|(l, &c)| l.len() != c)
        {
            return Err(Error::TableShape("label table does not match counts".into()));
        }
        for (n, dim_labels) in labels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in dim_labels {
                if !seen.insert(l.as_str()) {
                    return Err(Error::TableShape(format!(
                        "duplicate label {l:?} in dim {n}"
                    )));
                }
            }
        }
        self.labels = labels;
        Ok(self)
    }

    fn check_identities(&self) -> Result<()> {
        let violation = |identity: String, x: SimplexId| Error::IdentityViolation {
            identity,
            dim: x.dim,
            simplex: self.label(x).to_string(),
        };
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..=self.cap {
            for x in 0..self.counts[n] {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face_idx(n - 1, self.face_idx(n, x, j), i);
                        let rhs = self.face_idx(n - 1, self.face_idx(n, x, i), j - 1);
                        if lhs != rhs {
                            return Err(violation(
                                format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                                SimplexId::new(n, x),
                            ));
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..self.cap.saturating_sub(1) {
            for x in 0..self.counts[n] {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degen_idx(n + 1, self.degen_idx(n, x, j), i);
                        let rhs = self.degen_idx(n + 1, self.degen_idx(n, x, i), j + 1);
                        if lhs != rhs {
                            return Err(violation(
                                format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                                SimplexId::new(n, x),
                            ));
                        }
                    }
                }
            }
        }
        // mixed identities, checked on every s_j x inside the cap
        for n in 0..self.cap {
            for x in 0..self.counts[n] {
                for j in 0..=n {
                    let sx = self.degen_idx(n, x, j);
                    for i in 0..=n + 1 {
                        let lhs = self.face_idx(n + 1, sx, i);
                        let (rhs, name) = if i == j || i == j + 1 {
                            (x, format!("d_{i} s_{j} = id"))
                        } else if i < j {
                            (
                                self.degen_idx(n - 1, self.face_idx(n, x, i), j - 1),
                                format!("d_{i} s_{j} = s_{} d_{i}", j - 1),
                            )
                        } else {
                            (
                                self.degen_idx(n - 1, self.face_idx(n, x, i - 1), j),
                                format!("d_{i} s_{j} = s_{j} d_{}", i - 1),
                            )
                        };
                        if lhs != rhs {
                            return Err(violation(name, SimplexId::new(n, x)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of simplices in `dim`; zero above the cap.
    pub fn count(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts[0] == 0
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(dim)).map(move |i| SimplexId::new(dim, i))
    }

    /// All simplices in (dim, index) order.
    pub fn all_simplices(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..=self.cap).flat_map(move |d| self.simplices(d))
    }

    pub fn contains(&self, x: SimplexId) -> bool {
        x.dim <= self.cap && x.index < self.counts[x.dim]
    }

    pub fn label(&self, x: SimplexId) -> &str {
        &self.labels[x.dim][x.index]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn find_label(&self, dim: usize, label: &str) -> Option<SimplexId> {
        self.labels
            .get(dim)?
            .iter()
            .position(|l| l == label)
            .map(|i| SimplexId::new(dim, i))
    }

    #[inline]
    pub(crate) fn face_idx(&self, dim: usize, x: usize, i: usize) -> usize {
        self.faces[dim][x * (dim + 1) + i]
    }

    #[inline]
    pub(crate) fn degen_idx(&self, dim: usize, x: usize, i: usize) -> usize {
        self.degens[dim][x * (dim + 1) + i]
    }

    /// `d_0 x, ..., d_n x` as indices into dimension `dim - 1`.
    #[inline]
    pub(crate) fn faces_of(&self, dim: usize, x: usize) -> &[usize] {
        &self.faces[dim][x * (dim + 1)..(x + 1) * (dim + 1)]
    }

    pub(crate) fn degeneracies_of(&self, dim: usize, x: usize) -> &[usize] {
        &self.degens[dim][x * (dim + 1)..(x + 1) * (dim + 1)]
    }

    pub fn face(&self, x: SimplexId, i: usize) -> Result<SimplexId> {
        if !self.contains(x) || x.dim == 0 || i > x.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: x.dim });
        }
        Ok(SimplexId::new(x.dim - 1, self.face_idx(x.dim, x.index, i)))
    }

    pub fn degeneracy(&self, x: SimplexId, i: usize) -> Result<SimplexId> {
        if !self.contains(x) || i > x.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: x.dim });
        }
        if x.dim >= self.cap {
            return Err(Error::CapExceeded {
                dim: x.dim,
                cap: self.cap,
            });
        }
        Ok(SimplexId::new(x.dim + 1, self.degen_idx(x.dim, x.index, i)))
    }

    /// True iff `x` is `s_i y` for some `y` and `i`. Vertices are never degenerate.
    pub fn is_degenerate(&self, x: SimplexId) -> bool {
        self.degenerate_of[x.dim][x.index].is_some()
    }

    /// One way of writing `x` as `s_i y`, if `x` is degenerate.
    pub fn degenerate_source(&self, x: SimplexId) -> Option<(SimplexId, usize)> {
        self.degenerate_of[x.dim][x.index].map(|(y, i)| (SimplexId::new(x.dim - 1, y), i))
    }

    pub(crate) fn degenerate_source_idx(&self, dim: usize, x: usize) -> Option<(usize, usize)> {
        self.degenerate_of[dim][x]
    }

    pub fn nondegenerate(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices(dim).filter(move |&x| !self.is_degenerate(x))
    }

    /// Highest dimension holding a nondegenerate simplex, `None` when empty.
    pub fn max_nondegenerate_dim(&self) -> Option<usize> {
        (0..=self.cap)
            .rev()
            .find(|&d| self.nondegenerate(d).next().is_some())
    }

    /// Simplices of dimension `dim` whose face list is exactly `faces`, in
    /// index order.
    pub fn with_faces(&self, dim: usize, faces: &[usize]) -> &[usize] {
        debug_assert!(dim >= 1 && faces.len() == dim + 1);
        let index = self.by_faces[dim].get_or_init(|| {
            let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for x in 0..self.counts[dim] {
                map.entry(self.faces_of(dim, x).to_vec()).or_default().push(x);
            }
            map
        });
        index.get(faces).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The totally degenerate `dim`-simplex `s_0 ... s_0 v` on a vertex.
    pub fn constant(&self, v: usize, dim: usize) -> Result<SimplexId> {
        if dim > self.cap {
            return Err(Error::CapExceeded {
                dim: dim - 1,
                cap: self.cap,
            });
        }
        let mut x = v;
        for d in 0..dim {
            x = self.degen_idx(d, x, 0);
        }
        Ok(SimplexId::new(dim, x))
    }

    /// The simplex `α^* x` for a weakly monotone `α: [m] -> [dim x]`, given
    /// by its value list.
    pub fn pullback(&self, x: SimplexId, values: &[usize]) -> Result<SimplexId> {
        let m = values
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::TableShape("empty monotone map".into()))?;
        if m > self.cap {
            return Err(Error::CapExceeded {
                dim: m - 1,
                cap: self.cap,
            });
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > x.dim) {
            return Err(Error::TableShape(format!(
                "{values:?} is not a monotone map into [{}]",
                x.dim
            )));
        }
        Ok(SimplexId::new(m, self.pullback_idx(x.dim, x.index, values)))
    }

    /// Unchecked variant of [`Self::pullback`].
    pub(crate) fn pullback_idx(&self, dim: usize, x: usize, values: &[usize]) -> usize {
        // drop missing vertices from the top so indices stay valid
        let mut present = vec![false; dim + 1];
        for &v in values {
            present[v] = true;
        }
        let mut cur = x;
        let mut cur_dim = dim;
        for i in (0..=dim).rev() {
            if !present[i] {
                cur = self.face_idx(cur_dim, cur, i);
                cur_dim -= 1;
            }
        }
        // then repeat entries left to right
        for p in 0..values.len() - 1 {
            if values[p] == values[p + 1] {
                cur = self.degen_idx(cur_dim, cur, p);
                cur_dim += 1;
            }
        }
        cur
    }
}

/// A simplicial map, defined in every dimension up to the smaller cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<TruncatedSSet>,
    target: Arc<TruncatedSSet>,
    assign: Vec<Vec<usize>>,
}

pub(crate) fn check_commutes(
    source: &TruncatedSSet,
    target: &TruncatedSSet,
    assign: &[Vec<usize>],
) -> Result<()> {
    let top = source.cap.min(target.cap);
    if assign.len() != top + 1 || (0..=top).any(|d| assign[d].len() != source.counts[d]) {
        return Err(Error::TableShape("assignment does not cover the source".into()));
    }
    for (d, row) in assign.iter().enumerate() {
        if let Some(&bad) = row.iter().find(|&&y| y >= target.counts[d]) {
            return Err(Error::DanglingReference {
                what: "map assignment".into(),
                dim: d,
                index: bad,
            });
        }
    }
    for d in 1..=top {
        for x in 0..source.counts[d] {
            let fx = assign[d][x];
            for i in 0..=d {
                if assign[d - 1][source.face_idx(d, x, i)] != target.face_idx(d, fx, i) {
                    return Err(Error::NotWellDefined {
                        simplex: source.label(SimplexId::new(d, x)).to_string(),
                        index: i,
                        detail: "does not commute with this face".into(),
                    });
                }
            }
        }
    }
    for d in 0..top {
        for x in 0..source.counts[d] {
            let fx = assign[d][x];
            for i in 0..=d {
                if assign[d + 1][source.degen_idx(d, x, i)] != target.degen_idx(d, fx, i) {
                    return Err(Error::NotWellDefined {
                        simplex: source.label(SimplexId::new(d, x)).to_string(),
                        index: i,
                        detail: "does not commute with this degeneracy".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

impl SimplicialMap {
    /// Validates a full assignment table (`assign[d][x]` is the image index).
    pub fn from_table(
        source: Arc<TruncatedSSet>,
        target: Arc<TruncatedSSet>,
        assign: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_commutes(&source, &target, &assign)?;
        Ok(Self {
            source,
            target,
            assign,
        })
    }

    /// Extends an assignment on a generating set (for example all
    /// nondegenerate simplices) to the whole source by pushing values along
    /// faces and degeneracies, then checks commutation everywhere.
    pub fn build(
        source: Arc<TruncatedSSet>,
        target: Arc<TruncatedSSet>,
        generators: &[(SimplexId, SimplexId)],
    ) -> Result<Self> {
        let assign = propagate(&source, &target, generators)?;
        Self::from_table(source, target, assign)
    }

    pub fn identity(x: Arc<TruncatedSSet>) -> Self {
        let assign = x.counts.iter().map(|&c| (0..c).collect()).collect();
        Self {
            source: x.clone(),
            target: x,
            assign,
        }
    }

    pub fn source(&self) -> &Arc<TruncatedSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedSSet> {
        &self.target
    }

    pub fn apply(&self, x: SimplexId) -> SimplexId {
        SimplexId::new(x.dim, self.assign[x.dim][x.index])
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.assign
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::MapMismatch);
        }
        let top = self.assign.len().min(other.assign.len());
        let assign = (0..top)
            .map(|d| self.assign[d].iter().map(|&y| other.assign[d][y]).collect())
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assign,
        })
    }
}

pub(crate) fn propagate(
    source: &TruncatedSSet,
    target: &TruncatedSSet,
    generators: &[(SimplexId, SimplexId)],
) -> Result<Vec<Vec<usize>>> {
    let top = source.cap.min(target.cap);
    let mut assign: Vec<Vec<Option<usize>>> =
        (0..=top).map(|d| vec![None; source.counts[d]]).collect();
    let mut queue = VecDeque::new();

    let set = |assign: &mut Vec<Vec<Option<usize>>>,
                   queue: &mut VecDeque<SimplexId>,
                   x: SimplexId,
                   y: usize,
                   detail: &str|
     -> Result<()> {
        match assign[x.dim][x.index] {
            Some(old) if old != y => Err(Error::NotWellDefined {
                simplex: source.label(x).to_string(),
                index: 0,
                detail: format!("{detail}: conflicting images {old} and {y}"),
            }),
            Some(_) => Ok(()),
            None => {
                assign[x.dim][x.index] = Some(y);
                queue.push_back(x);
                Ok(())
            }
        }
    };

    for &(x, y) in generators {
        if !source.contains(x) || !target.contains(y) || x.dim != y.dim || x.dim > top {
            return Err(Error::DanglingReference {
                what: "generator assignment".into(),
                dim: x.dim,
                index: x.index,
            });
        }
        set(&mut assign, &mut queue, x, y.index, "generator")?;
    }
    while let Some(x) = queue.pop_front() {
        let fx = assign[x.dim][x.index].expect("queued simplices are assigned");
        if x.dim > 0 {
            for i in 0..=x.dim {
                let face = SimplexId::new(x.dim - 1, source.face_idx(x.dim, x.index, i));
                let img = target.face_idx(x.dim, fx, i);
                set(&mut assign, &mut queue, face, img, "face")?;
            }
        }
        if x.dim < top {
            for i in 0..=x.dim {
                let deg = SimplexId::new(x.dim + 1, source.degen_idx(x.dim, x.index, i));
                let img = target.degen_idx(x.dim, fx, i);
                set(&mut assign, &mut queue, deg, img, "degeneracy")?;
            }
        }
    }
    assign
        .into_iter()
        .enumerate()
        .map(|(d, row)| {
            row.into_iter()
                .enumerate()
                .map(|(x, y)| {
                    y.ok_or_else(|| Error::NotWellDefined {
                        simplex: source.label(SimplexId::new(d, x)).to_string(),
                        index: 0,
                        detail: "not reached from the generators".into(),
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(cap: usize) -> TruncatedSSet {
        let counts = vec![1; cap + 1];
        let faces = (0..=cap)
            .map(|n| if n == 0 { vec![vec![]] } else { vec![vec![0; n + 1]] })
            .collect();
        let degens = (0..=cap)
            .map(|n| if n == cap { vec![vec![]] } else { vec![vec![0; n + 1]] })
            .collect();
        TruncatedSSet::new(cap, counts, faces, degens).unwrap()
    }

    // Δ[1] truncated at 1: vertices 0, 1; edges 00, 01, 11.
    fn interval() -> TruncatedSSet {
        TruncatedSSet::new(
            1,
            vec![2, 3],
            vec![vec![], vec![vec![0, 0], vec![1, 0], vec![1, 1]]],
            vec![vec![vec![0], vec![2]], vec![]],
        )
        .unwrap()
    }

    #[test]
    fn one_point_presentation_is_valid() {
        let p = point(2);
        assert_eq!(p.counts(), &[1, 1, 1]);
        assert!(p.is_degenerate(SimplexId::new(1, 0)));
    }

    #[test]
    fn face_face_identity_violation_is_named() {
        // 2-simplex with edges whose endpoints do not match up
        let err = TruncatedSSet::new(
            2,
            vec![2, 3, 1],
            vec![
                vec![],
                vec![vec![0, 0], vec![1, 0], vec![1, 1]],
                vec![vec![1, 0, 2]],
            ],
            vec![vec![vec![0], vec![2]], vec![vec![0, 0], vec![0, 0], vec![0, 0]], vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }), "{err}");
    }

    #[test]
    fn dangling_reference_rejected() {
        let err = TruncatedSSet::new(1, vec![1, 1], vec![vec![], vec![vec![0, 3]]], vec![vec![vec![0]], vec![]])
            .unwrap_err();
        assert!(matches!(err, Error::DanglingReference { dim: 0, index: 3, .. }));
    }

    #[test]
    fn face_and_degeneracy_lookups() {
        let x = interval();
        let v = SimplexId::new(0, 1);
        let sv = x.degeneracy(v, 0).unwrap();
        assert_eq!(x.face(sv, 0).unwrap(), v);
        assert_eq!(x.face(sv, 1).unwrap(), v);
        assert_eq!(
            x.degeneracy(SimplexId::new(1, 1), 0),
            Err(Error::CapExceeded { dim: 1, cap: 1 })
        );
        assert_eq!(
            x.face(SimplexId::new(1, 1), 2),
            Err(Error::IndexOutOfRange { index: 2, dim: 1 })
        );
        assert!(!x.is_degenerate(SimplexId::new(1, 1)));
        assert!(x.is_degenerate(SimplexId::new(1, 2)));
    }

    #[test]
    fn collapse_to_point_is_a_map() {
        let x = Arc::new(interval());
        let p = Arc::new(point(1));
        let f = SimplicialMap::build(
            x.clone(),
            p,
            &[(SimplexId::new(1, 1), SimplexId::new(1, 0))],
        )
        .unwrap();
        assert_eq!(f.apply(SimplexId::new(0, 1)), SimplexId::new(0, 0));
        let id = SimplicialMap::identity(x.clone());
        assert_eq!(id.then(&f).unwrap(), f);
    }

    #[test]
    fn map_with_bad_face_is_rejected() {
        let x = Arc::new(interval());
        // send the edge 01 to the degenerate edge at 0 but vertex 1 to vertex 1
        let err = SimplicialMap::build(
            x.clone(),
            x,
            &[
                (SimplexId::new(1, 1), SimplexId::new(1, 0)),
                (SimplexId::new(0, 1), SimplexId::new(0, 1)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotWellDefined { .. }));
    }

    #[test]
    fn pullback_follows_monotone_map() {
        let x = interval();
        let e = SimplexId::new(1, 1);
        assert_eq!(x.pullback(e, &[0]).unwrap(), SimplexId::new(0, 0));
        assert_eq!(x.pullback(e, &[1]).unwrap(), SimplexId::new(0, 1));
        assert_eq!(x.pullback(e, &[0, 1]).unwrap(), e);
        assert_eq!(x.pullback(e, &[1, 1]).unwrap(), SimplexId::new(1, 2));
    }
}
