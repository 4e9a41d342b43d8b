//! Homotopies of stratified maps, invertibly connected components and the
//! homotopy monoids `τ_n(X, x)`.
//!
//! A homotopy from `f` to `g` is a map `H: A ⊛ Δ[1]_t -> X` restricting to
//! `f` on `A × {0}` and to `g` on `A × {1}`; relative to `B ↪ A` it is also
//! constant along `Δ[1]` on `B`. Homotopies are found by pinning those
//! restrictions and searching for the interior with the extension solver.
//!
//! Elements of `τ_n(X, x)` are `n`-simplices whose faces are all the constant
//! `(n-1)`-simplex at `x`, modulo homotopy relative to `∂Δ[n]`. The product
//! `[α][β]` fills the horn `Λ^n[n+1]` with face `n-1` on `α`, face `n+1` on
//! `β` and the constant elsewhere, then takes `d_n` of the filler. On the
//! nerve of a monoid and `n = 1` this gives `[α][β] = [α·β]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{assemble_horn_map, find_extensions, first_extension, ExtensionProblem};
use crate::sset::SimplexId;
use crate::standard::{boundary, complicial_horn, delta, delta_t, HornInclusion, StandardComplex};
use crate::strat::{gproduct, StratifiedMap, StratifiedSSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    /// `H: A ⊛ Δ[1]_t -> X`.
    pub homotopy: StratifiedMap,
    pub from: StratifiedMap,
    pub to: StratifiedMap,
}

/// Whether a found-witness relation was already an equivalence relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationDiagnostic {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub closure_needed: bool,
}

impl RelationDiagnostic {
    pub fn of(related: &[Vec<bool>]) -> Self {
        let n = related.len();
        let reflexive = (0..n).all(|i| related[i][i]);
        let symmetric = (0..n).all(|i| (0..n).all(|j| !related[i][j] || related[j][i]));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !related[i][j] || (0..n).all(|k| !related[j][k] || related[i][k]))
        });
        Self {
            reflexive,
            symmetric,
            transitive,
            closure_needed: !(reflexive && symmetric && transitive),
        }
    }
}

/// Classes of the equivalence relation generated by `related`, each sorted,
/// ordered by least member.
pub fn closure_classes(related: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = related.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..n {
            if related[i][j] {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().collect()
}

fn same_maps(f: &StratifiedMap, g: &StratifiedMap) -> bool {
    **f.source() == **g.source() && **f.target() == **g.target()
}

/// Searches for `H` with `f ∼ g`.
pub fn simple_homotopic(f: &StratifiedMap, g: &StratifiedMap) -> Result<Option<HomotopyWitness>> {
    rel_homotopic(f, g, None)
}

/// Searches for `H` with `f ∼_B g`, where `fixed` is the inclusion `B ↪ A`.
///
/// The source `A` must carry no nondegenerate simplex at its cap dimension,
/// so that every top cell of `A ⊛ Δ[1]_t` lies inside the cap.
pub fn rel_homotopic(
    f: &StratifiedMap,
    g: &StratifiedMap,
    fixed: Option<&StratifiedMap>,
) -> Result<Option<HomotopyWitness>> {
    if !same_maps(f, g) {
        return Err(Error::MapMismatch);
    }
    let a = f.source();
    let x = f.target();
    let cap = a.cap();
    if let Some(top) = a.sset().max_nondegenerate_dim() {
        if top >= cap {
            return Err(Error::CapTooSmall {
                needed: top + 1,
                cap,
            });
        }
    }
    if x.cap() < cap {
        return Err(Error::CapTooSmall {
            needed: cap,
            cap: x.cap(),
        });
    }
    let mut in_fixed: Vec<Vec<bool>> = a.sset().counts().iter().map(|&c| vec![false; c]).collect();
    if let Some(inc) = fixed {
        if **inc.target() != **a {
            return Err(Error::MapMismatch);
        }
        for (d, row) in inc.table().iter().enumerate() {
            for &s in row {
                if f.table()[d][s] != g.table()[d][s] {
                    return Err(Error::RestrictionMismatch);
                }
                in_fixed[d][s] = true;
            }
        }
    }

    let interval = delta_t(1, cap)?;
    let product = gproduct(a, interval.complex());
    let p = product.complex().clone();
    let ps = p.sset();

    if f == g {
        let assign = (0..=cap)
            .map(|d| {
                ps.simplices(d)
                    .map(|s| f.table()[d][product.split(s).0.index])
                    .collect()
            })
            .collect();
        return Ok(Some(HomotopyWitness {
            homotopy: StratifiedMap::new(p, x.clone(), assign)?,
            from: f.clone(),
            to: g.clone(),
        }));
    }

    let mut pins: Vec<Vec<Option<usize>>> = Vec::with_capacity(cap + 1);
    for d in 0..=cap {
        let mut row = Vec::with_capacity(ps.count(d));
        for s in ps.simplices(d) {
            let (sa, st) = product.split(s);
            let t = interval.map_of(st).values();
            let pin = if t.iter().all(|&v| v == 0) || in_fixed[d][sa.index] {
                Some(f.table()[d][sa.index])
            } else if t.iter().all(|&v| v == 1) {
                Some(g.table()[d][sa.index])
            } else {
                None
            };
            row.push(pin);
        }
        pins.push(row);
    }
    let problem = ExtensionProblem::with_pins(p, x.clone(), pins)?;
    Ok(first_extension(&problem).map(|homotopy| HomotopyWitness {
        homotopy,
        from: f.clone(),
        to: g.clone(),
    }))
}

/// The partition of vertices into invertibly connected components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tau0 {
    pub classes: Vec<Vec<SimplexId>>,
    pub relation: RelationDiagnostic,
}

/// Vertices modulo "there is a thin 1-simplex from x to y", closed up to an
/// equivalence relation; the diagnostic records whether closing was needed.
pub fn tau0(x: &StratifiedSSet) -> Result<Tau0> {
    if x.cap() < 1 {
        return Err(Error::CapTooSmall { needed: 1, cap: 0 });
    }
    let s = x.sset();
    let v = s.count(0);
    let mut related = vec![vec![false; v]; v];
    for e in s.simplices(1) {
        if x.is_thin(e) {
            let f = s.faces_of(1, e.index);
            related[f[1]][f[0]] = true;
        }
    }
    Ok(Tau0 {
        relation: RelationDiagnostic::of(&related),
        classes: closure_classes(&related)
            .into_iter()
            .map(|c| c.into_iter().map(|i| SimplexId::new(0, i)).collect())
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SphereElement {
    pub n: usize,
    pub vertex: SimplexId,
    pub simplex: SimplexId,
}

/// Every `n`-simplex all of whose faces are the constant at `vertex`.
pub fn sphere_elements(x: &StratifiedSSet, vertex: SimplexId, n: usize) -> Result<Vec<SphereElement>> {
    let s = x.sset();
    if vertex.dim != 0 || !s.contains(vertex) {
        return Err(Error::DanglingReference {
            what: "base vertex".into(),
            dim: vertex.dim,
            index: vertex.index,
        });
    }
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
    }
    if s.cap() < n {
        return Err(Error::CapTooSmall {
            needed: n,
            cap: s.cap(),
        });
    }
    let c = s.constant(vertex.index, n - 1)?.index;
    let faces = vec![c; n + 1];
    Ok(s.with_faces(n, &faces)
        .iter()
        .map(|&i| SphereElement {
            n,
            vertex,
            simplex: SimplexId::new(n, i),
        })
        .collect())
}

/// Everything needed to compute in `τ_n(X, x)` for one `(X, x, n)`.
#[derive(Clone, Debug)]
pub struct TauContext {
    target: Arc<StratifiedSSet>,
    vertex: SimplexId,
    n: usize,
    sphere: StandardComplex,
    boundary_inclusion: StratifiedMap,
    horn: HornInclusion,
    constant: SimplexId,
    face_constant: SimplexId,
}

impl TauContext {
    pub fn new(target: Arc<StratifiedSSet>, vertex: SimplexId, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
        }
        let s = target.sset();
        if vertex.dim != 0 || !s.contains(vertex) {
            return Err(Error::DanglingReference {
                what: "base vertex".into(),
                dim: vertex.dim,
                index: vertex.index,
            });
        }
        if s.cap() < n + 1 {
            return Err(Error::CapTooSmall {
                needed: n + 1,
                cap: s.cap(),
            });
        }
        let sphere = delta(n, n + 1)?;
        let bd = boundary(n, n + 1)?;
        let assign = (0..=n + 1)
            .map(|d| {
                bd.sset()
                    .simplices(d)
                    .map(|b| sphere.simplex(bd.map_of(b).values()).expect("subcomplex").index)
                    .collect()
            })
            .collect();
        let boundary_inclusion = StratifiedMap::new(bd.complex().clone(), sphere.complex().clone(), assign)?;
        Ok(Self {
            horn: complicial_horn(n, n + 1, n + 1)?,
            constant: s.constant(vertex.index, n)?,
            face_constant: s.constant(vertex.index, n - 1)?,
            target,
            vertex,
            n,
            sphere,
            boundary_inclusion,
        })
    }

    pub fn target(&self) -> &Arc<StratifiedSSet> {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex(&self) -> SimplexId {
        self.vertex
    }

    /// The constant `n`-simplex at the base vertex, representing the unit.
    pub fn constant(&self) -> SimplexId {
        self.constant
    }

    pub fn is_sphere_element(&self, alpha: SimplexId) -> bool {
        let s = self.target.sset();
        alpha.dim == self.n
            && s.contains(alpha)
            && s.faces_of(self.n, alpha.index)
                .iter()
                .all(|&f| f == self.face_constant.index)
    }

    fn require_sphere(&self, alpha: SimplexId) -> Result<()> {
        if self.is_sphere_element(alpha) {
            Ok(())
        } else if self.target.sset().contains(alpha) {
            Err(Error::NotSphereElement(self.target.sset().label(alpha).to_string()))
        } else {
            Err(Error::DanglingReference {
                what: "sphere element".into(),
                dim: alpha.dim,
                index: alpha.index,
            })
        }
    }

    pub fn sphere_elements(&self) -> Vec<SimplexId> {
        let faces = vec![self.face_constant.index; self.n + 1];
        self.target
            .sset()
            .with_faces(self.n, &faces)
            .iter()
            .map(|&i| SimplexId::new(self.n, i))
            .collect()
    }

    /// `Δ[n] -> X` classifying `alpha`.
    pub fn sphere_map(&self, alpha: SimplexId) -> Result<StratifiedMap> {
        self.sphere.yoneda(&self.target, alpha)
    }

    /// A homotopy from `alpha` to `beta` relative to `∂Δ[n]`.
    pub fn homotopic(&self, alpha: SimplexId, beta: SimplexId) -> Result<Option<HomotopyWitness>> {
        self.require_sphere(alpha)?;
        self.require_sphere(beta)?;
        rel_homotopic(
            &self.sphere_map(alpha)?,
            &self.sphere_map(beta)?,
            Some(&self.boundary_inclusion),
        )
    }

    fn horn_faces(&self, alpha: SimplexId, beta: SimplexId) -> BTreeMap<usize, SimplexId> {
        let n = self.n;
        (0..=n + 1)
            .filter(|&i| i != n)
            .map(|i| {
                let v = if i + 1 == n {
                    alpha
                } else if i == n + 1 {
                    beta
                } else {
                    self.constant
                };
                (i, v)
            })
            .collect()
    }

    /// The horn `Λ^n[n+1] -> X` with face `n-1` on `alpha`, face `n+1` on
    /// `beta` and the constant elsewhere.
    pub fn product_horn(&self, alpha: SimplexId, beta: SimplexId) -> Result<StratifiedMap> {
        self.require_sphere(alpha)?;
        self.require_sphere(beta)?;
        assemble_horn_map(&self.horn, &self.horn_faces(alpha, beta), &self.target)
    }

    /// Fillers `θ` of the product horn, in search order.
    pub fn fillers(&self, alpha: SimplexId, beta: SimplexId, limit: Option<usize>) -> Result<Vec<SimplexId>> {
        let map = self.product_horn(alpha, beta)?;
        let problem = ExtensionProblem::new(&self.horn.inclusion, &map)?;
        let top = self.horn.simplex.top().expect("cap = n + 1");
        Ok(find_extensions(&problem, limit)
            .into_iter()
            .map(|g| g.apply(top))
            .collect())
    }

    fn no_filler(&self, faces: &BTreeMap<usize, SimplexId>) -> Error {
        let s = self.target.sset();
        Error::NoFiller {
            k: self.n,
            n: self.n + 1,
            faces: faces.iter().map(|(i, f)| format!("{i}:{}", s.label(*f))).collect(),
        }
    }

    /// `(d_n θ, θ)` for the first filler `θ`.
    pub fn multiply(&self, alpha: SimplexId, beta: SimplexId) -> Result<(SimplexId, SimplexId)> {
        let theta = self
            .fillers(alpha, beta, Some(1))?
            .pop()
            .ok_or_else(|| self.no_filler(&self.horn_faces(alpha, beta)))?;
        let product = self.target.sset().face(theta, self.n)?;
        Ok((product, theta))
    }
}

/// `[alpha][beta]` computed with the first filler in search order.
pub fn multiply(
    x: &Arc<StratifiedSSet>,
    vertex: SimplexId,
    n: usize,
    alpha: SimplexId,
    beta: SimplexId,
) -> Result<SphereElement> {
    let ctx = TauContext::new(x.clone(), vertex, n)?;
    let (simplex, _) = ctx.multiply(alpha, beta)?;
    Ok(SphereElement { n, vertex, simplex })
}

/// A finite monoid presented by a multiplication table on homotopy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidTable {
    pub n: usize,
    pub vertex: SimplexId,
    /// Members of each class in index order; the first is the representative.
    pub classes: Vec<Vec<SimplexId>>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    /// The filler used for each cell.
    pub fillers: Vec<Vec<SimplexId>>,
    pub relation: RelationDiagnostic,
    pub associative: bool,
    pub unit_law: bool,
    /// Observed only; no commutativity is claimed in general.
    pub commutative: bool,
    pub inverses: Vec<Option<usize>>,
    pub is_group: bool,
}

impl MonoidTable {
    /// Assembles a table and computes every flag from it.
    pub fn from_parts(
        n: usize,
        vertex: SimplexId,
        classes: Vec<Vec<SimplexId>>,
        unit: usize,
        table: Vec<Vec<usize>>,
        fillers: Vec<Vec<SimplexId>>,
        relation: RelationDiagnostic,
    ) -> Self {
        let size = classes.len();
        let associative = (0..size).all(|a| {
            (0..size).all(|b| (0..size).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
        });
        let unit_law = (0..size).all(|c| table[unit][c] == c && table[c][unit] == c);
        let commutative = (0..size).all(|a| (0..size).all(|b| table[a][b] == table[b][a]));
        let (inverses, is_group) = inverses_in(&table, unit);
        Self {
            n,
            vertex,
            classes,
            unit,
            table,
            fillers,
            relation,
            associative,
            unit_law,
            commutative,
            inverses,
            is_group,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> SimplexId {
        self.classes[class][0]
    }

    pub fn class_of(&self, simplex: SimplexId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&simplex))
    }

    /// Same classes, unit and table; fillers and diagnostics are ignored.
    pub fn same_monoid(&self, other: &MonoidTable) -> bool {
        self.classes == other.classes && self.unit == other.unit && self.table == other.table
    }
}

fn inverses_in(table: &[Vec<usize>], unit: usize) -> (Vec<Option<usize>>, bool) {
    let inverses: Vec<Option<usize>> = (0..table.len())
        .map(|c| (0..table.len()).find(|&d| table[c][d] == unit && table[d][c] == unit))
        .collect();
    let is_group = inverses.iter().all(Option::is_some);
    (inverses, is_group)
}

/// Two-sided inverses of every class, and whether all exist.
pub fn find_inverses(table: &MonoidTable) -> (Vec<Option<usize>>, bool) {
    inverses_in(&table.table, table.unit)
}

fn homotopy_relation(ctx: &TauContext, elements: &[SimplexId]) -> Result<Vec<Vec<bool>>> {
    let m = elements.len();
    let flat = (0..m * m)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p / m, p % m);
            ctx.homotopic(elements[i], elements[j]).map(|w| w.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(flat.chunks(m.max(1)).map(<[bool]>::to_vec).collect())
}

/// Sphere elements grouped into homotopy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePartition {
    pub elements: Vec<SimplexId>,
    pub classes: Vec<Vec<SimplexId>>,
    pub relation: RelationDiagnostic,
}

impl SpherePartition {
    pub fn compute(ctx: &TauContext) -> Result<Self> {
        let elements = ctx.sphere_elements();
        let related = homotopy_relation(ctx, &elements)?;
        let classes = closure_classes(&related)
            .into_iter()
            .map(|c| c.into_iter().map(|i| elements[i]).collect())
            .collect();
        Ok(Self {
            relation: RelationDiagnostic::of(&related),
            elements,
            classes,
        })
    }

    pub fn class_of(&self, simplex: SimplexId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&simplex))
    }
}

/// The homotopy monoid `τ_n(X, x)` as a full table.
pub fn tau_table(x: &Arc<StratifiedSSet>, vertex: SimplexId, n: usize) -> Result<MonoidTable> {
    let ctx = TauContext::new(x.clone(), vertex, n)?;
    let partition = SpherePartition::compute(&ctx)?;
    tau_table_with(&ctx, &partition)
}

pub fn tau_table_with(ctx: &TauContext, partition: &SpherePartition) -> Result<MonoidTable> {
    let size = partition.classes.len();
    let cells = (0..size * size)
        .into_par_iter()
        .map(|p| {
            let (a, b) = (p / size, p % size);
            let (prod, theta) = ctx.multiply(partition.classes[a][0], partition.classes[b][0])?;
            let class = partition
                .class_of(prod)
                .ok_or_else(|| Error::NotSphereElement(ctx.target.sset().label(prod).to_string()))?;
            Ok((class, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = cells.chunks(size.max(1)).map(|r| r.iter().map(|c| c.0).collect()).collect();
    let fillers = cells.chunks(size.max(1)).map(|r| r.iter().map(|c| c.1).collect()).collect();
    let unit = partition
        .class_of(ctx.constant)
        .expect("the constant simplex is a sphere element");
    Ok(MonoidTable::from_parts(
        ctx.n,
        ctx.vertex,
        partition.classes.clone(),
        unit,
        table,
        fillers,
        partition.relation,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedReport {
    /// Representative of the class every product landed in (the first
    /// product's class when inconsistent).
    pub class_representative: SimplexId,
    pub fillers_tested: usize,
    pub products: Vec<SimplexId>,
    pub consistent: bool,
}

fn audit_products(
    ctx: &TauContext,
    partition: &SpherePartition,
    pairs: &[(SimplexId, SimplexId)],
    limit: Option<usize>,
) -> Result<WellDefinedReport> {
    let s = ctx.target.sset();
    let mut products = Vec::new();
    for &(a, b) in pairs {
        let fillers = ctx.fillers(a, b, limit)?;
        if fillers.is_empty() {
            return Err(ctx.no_filler(&ctx.horn_faces(a, b)));
        }
        for theta in fillers {
            products.push(s.face(theta, ctx.n)?);
        }
    }
    let classes: Vec<Option<usize>> = products.iter().map(|&p| partition.class_of(p)).collect();
    let consistent = classes[0].is_some() && classes.iter().all(|c| *c == classes[0]);
    let class_representative = match classes[0] {
        Some(c) => partition.classes[c][0],
        None => products[0],
    };
    Ok(WellDefinedReport {
        class_representative,
        fillers_tested: products.len(),
        products,
        consistent,
    })
}

/// Checks that every filler for `(alpha, beta)` and for `(alpha2, beta2)`
/// yields a product in a single homotopy class.
pub fn check_well_defined(
    x: &Arc<StratifiedSSet>,
    vertex: SimplexId,
    n: usize,
    (alpha, alpha2): (SimplexId, SimplexId),
    (beta, beta2): (SimplexId, SimplexId),
) -> Result<WellDefinedReport> {
    let ctx = TauContext::new(x.clone(), vertex, n)?;
    let partition = SpherePartition::compute(&ctx)?;
    for (p, q) in [(alpha, alpha2), (beta, beta2)] {
        ctx.require_sphere(p)?;
        ctx.require_sphere(q)?;
        if partition.class_of(p) != partition.class_of(q) {
            return Err(Error::NotHomotopic(format!(
                "{} and {}",
                x.sset().label(p),
                x.sset().label(q)
            )));
        }
    }
    audit_products(&ctx, &partition, &[(alpha, beta), (alpha2, beta2)], None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellAudit {
    pub row: usize,
    pub column: usize,
    pub pairs_tested: usize,
    pub fillers_tested: usize,
    pub consistent: bool,
}

/// For every cell, runs every filler of every pair of class members and
/// checks that all products land in the tabulated class.
pub fn audit_table(
    ctx: &TauContext,
    partition: &SpherePartition,
    table: &MonoidTable,
    limit: Option<usize>,
) -> Result<Vec<CellAudit>> {
    let size = table.len();
    (0..size * size)
        .into_par_iter()
        .map(|p| {
            let (r, c) = (p / size, p % size);
            let pairs: Vec<(SimplexId, SimplexId)> = table.classes[r]
                .iter()
                .flat_map(|&a| table.classes[c].iter().map(move |&b| (a, b)))
                .collect();
            let report = audit_products(ctx, partition, &pairs, limit)?;
            let expected = table.representative(table.table[r][c]);
            Ok(CellAudit {
                row: r,
                column: c,
                pairs_tested: pairs.len(),
                fillers_tested: report.fillers_tested,
                consistent: report.consistent && report.class_representative == expected,
            })
        })
        .collect()
}

/// The simplices built in the associativity argument: `θ` fills
/// `(α, β)`, `ψ` fills `(d_n θ, γ)`, `φ` fills `(β, γ)`, and `u` fills the
/// horn `Λ^n[n+2]` with faces `θ, ψ, φ` at `n-1, n+1, n+2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub theta: SimplexId,
    pub psi: SimplexId,
    pub phi: SimplexId,
    pub u: SimplexId,
    /// `d_n d_n u`, which equals `d_n ψ`.
    pub joined: SimplexId,
    /// `d_n u`, a filler for `(α, d_n φ)`.
    pub middle: SimplexId,
}

pub fn associativity_witness(
    ctx: &TauContext,
    alpha: SimplexId,
    beta: SimplexId,
    gamma: SimplexId,
) -> Result<AssociativityWitness> {
    let n = ctx.n;
    let target = &ctx.target;
    let s = target.sset();
    if s.cap() < n + 2 {
        return Err(Error::CapTooSmall {
            needed: n + 2,
            cap: s.cap(),
        });
    }
    let (ab, theta) = ctx.multiply(alpha, beta)?;
    let (_, psi) = ctx.multiply(ab, gamma)?;
    let (_, phi) = ctx.multiply(beta, gamma)?;
    let horn = complicial_horn(n, n + 2, n + 2)?;
    let constant = s.constant(ctx.vertex.index, n + 1)?;
    let faces: BTreeMap<usize, SimplexId> = (0..=n + 2)
        .filter(|&i| i != n)
        .map(|i| {
            let v = match i {
                _ if i + 1 == n => theta,
                _ if i == n + 1 => psi,
                _ if i == n + 2 => phi,
                _ => constant,
            };
            (i, v)
        })
        .collect();
    let map = assemble_horn_map(&horn, &faces, target)?;
    let problem = ExtensionProblem::new(&horn.inclusion, &map)?;
    let top = horn.simplex.top().expect("cap = n + 2");
    let u = first_extension(&problem)
        .ok_or_else(|| Error::NoFiller {
            k: n,
            n: n + 2,
            faces: faces.iter().map(|(i, f)| format!("{i}:{}", s.label(*f))).collect(),
        })?
        .apply(top);
    let middle = s.face(u, n)?;
    let joined = s.face(middle, n)?;
    Ok(AssociativityWitness {
        theta,
        psi,
        phi,
        u,
        joined,
        middle,
    })
}
