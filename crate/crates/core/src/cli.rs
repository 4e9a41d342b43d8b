//! The `complicial` command line.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 mathematical
//! failure (verification failed, no filler, not a quasi-category or Kan
//! complex), 3 I/O error.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::adapters::{
    builtin, monoid_from_presentation, nerve, quasicat_e, CategoryFile, FiniteCategory, MonoidFile, Presentation,
    DEFAULT_PRESENTATION_BOUND,
};
use crate::document::{ComplexDocument, InputDigest, ResultDocument, ResultKind};
use crate::error::Error;
use crate::homotopy::{
    audit_table, simple_homotopic, tau0, tau_table_with, CellAudit, HomotopyWitness,
    RelationDiagnostic, SpherePartition, TauContext,
};
use crate::lifting::{verify_weak_complicial, Family, Witness};
use crate::sset::{SimplexId, TruncatedSSet};
use crate::standard::{
    boundary, complicial_delta, complicial_horn, delta, delta_dprime, delta_prime, delta_t, horn_prime, StandardComplex,
};
use crate::strat::{gproduct, StratifiedSSet};

#[derive(Debug, Parser)]
#[command(name = "complicial", version, about = "Stratified simplicial sets: build, verify, homotopy monoids")]
pub struct Cli {
    /// Worker threads for the solver (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the output document here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named complex and write it as a complex document.
    Build(BuildArgs),
    /// Check the weak complicial lifting conditions up to a dimension.
    Verify(VerifyArgs),
    /// Compute the homotopy monoid τ_n(X, x) as a table.
    Tau(TauArgs),
    /// Partition the vertices into invertibly connected components.
    Tau0(InputArg),
    /// Search for a homotopy between two vertices or two sphere elements.
    Homotopy(HomotopyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildName {
    Delta,
    DeltaT,
    CompDelta,
    CompHorn,
    HornPrime,
    DeltaPrime,
    DeltaDprime,
    Boundary,
    Nerve,
    Th0,
    QcatE,
    Product,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub name: BuildName,
    /// `n` or `k n` for standard complexes; input documents for th0, qcat-e
    /// and product (stdin when omitted or `-`). th0 and qcat-e also accept
    /// a category flag instead, and take the nerve of it first.
    pub params: Vec<String>,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Monoid file: {"elements", "unit", "table"}.
    #[arg(long, group = "algebra")]
    pub monoid: Option<PathBuf>,
    /// Category file: {"objects", "morphisms", "identities", "composition"}.
    #[arg(long, group = "algebra")]
    pub category: Option<PathBuf>,
    /// Monoid presentation file: {"generators", "relations"}.
    #[arg(long, group = "algebra")]
    pub presentation: Option<PathBuf>,
    /// trivial, boolean, interval, cyclic:N, symmetric:N, codiscrete:K.
    #[arg(long, group = "algebra")]
    pub builtin: Option<String>,
    /// Inner horn bound for qcat-e (default: the cap).
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Size bound when completing a presentation.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Complex document (stdin when omitted or `-`).
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: Option<String>,
    /// Highest dimension to check (default: the cap).
    #[arg(long)]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    pub input: Option<String>,
    #[arg(long = "n")]
    pub n: usize,
    /// Label of the base vertex.
    #[arg(long)]
    pub vertex: String,
    /// Run every filler of every pair of representatives for each cell.
    #[arg(long)]
    pub audit_well_defined: bool,
    /// Fillers per pair in the audit (default: all).
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HomotopyArgs {
    pub input: Option<String>,
    /// Source vertex label (vertex mode).
    #[arg(long, requires = "to", conflicts_with_all = ["n", "alpha"])]
    pub from: Option<String>,
    #[arg(long)]
    pub to: Option<String>,
    /// Dimension of the sphere elements (sphere mode).
    #[arg(long = "n", requires_all = ["vertex", "alpha", "beta"])]
    pub n: Option<usize>,
    #[arg(long)]
    pub vertex: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
}

/// A failed run, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Math(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Math(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_mathematical() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// A document to write, and the exit code to return after writing it.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn read_source(path: Option<&str>) -> Result<(String, String), Failure> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
            Ok(("-".into(), s))
        }
        Some(p) => fs::read_to_string(p)
            .map(|s| (p.to_string(), s))
            .map_err(|e| Failure::Io(format!("reading {p}: {e}"))),
    }
}

struct Loaded {
    doc: ComplexDocument,
    complex: Arc<StratifiedSSet>,
    digest: InputDigest,
}

fn load(path: Option<&str>) -> Result<Loaded, Failure> {
    let (name, text) = read_source(path)?;
    let doc = ComplexDocument::from_json(&text)?;
    let complex = Arc::new(doc.to_complex()?);
    let digest = InputDigest {
        name,
        sha256: doc.digest(),
    };
    Ok(Loaded { doc, complex, digest })
}

fn find(x: &StratifiedSSet, dim: usize, label: &str) -> Result<SimplexId, Failure> {
    x.sset()
        .find_label(dim, label)
        .ok_or_else(|| Error::UnknownLabel(format!("{label} (dim {dim})")).into())
}

fn label(x: &StratifiedSSet, s: SimplexId) -> String {
    x.sset().label(s).to_string()
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Tau(a) => tau(a),
        Command::Tau0(a) => run_tau0(a),
        Command::Homotopy(a) => homotopy(a),
    }
}

fn ints(params: &[String], want: usize, usage: &str) -> Result<Vec<usize>, Failure> {
    let vals = params
        .iter()
        .map(|p| p.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("expected integers: {usage}")))?;
    if vals.len() != want {
        return Err(Failure::Input(format!("expected {want} parameter(s): {usage}")));
    }
    Ok(vals)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn category_of(a: &BuildArgs) -> Result<(FiniteCategory, String), Failure> {
    if let Some(p) = &a.monoid {
        Ok((read_json::<MonoidFile>(p)?.build()?, p.display().to_string()))
    } else if let Some(p) = &a.category {
        Ok((read_json::<CategoryFile>(p)?.build()?, p.display().to_string()))
    } else if let Some(p) = &a.presentation {
        let pres: Presentation = read_json(p)?;
        let bound = a.limit.unwrap_or(DEFAULT_PRESENTATION_BOUND);
        Ok((monoid_from_presentation(&pres, bound)?, p.display().to_string()))
    } else if let Some(b) = &a.builtin {
        Ok((builtin(b)?, b.clone()))
    } else {
        Err(Failure::Input(
            "nerve needs one of --monoid, --category, --presentation, --builtin".into(),
        ))
    }
}

fn build(a: &BuildArgs) -> Result<Output, Failure> {
    let standard = |c: StandardComplex, name: String| ComplexDocument::from_complex(c.complex(), Some(name), None);
    let one = |usage: &str| ints(&a.params, 1, usage).map(|v| v[0]);
    let two = |usage: &str| ints(&a.params, 2, usage).map(|v| (v[0], v[1]));
    let doc = match a.name {
        BuildName::Delta => {
            let n = one("delta N")?;
            standard(delta(n, a.cap.unwrap_or(n))?, format!("delta {n}"))
        }
        BuildName::DeltaT => {
            let n = one("delta-t N")?;
            standard(delta_t(n, a.cap.unwrap_or(n))?, format!("delta-t {n}"))
        }
        BuildName::Boundary => {
            let n = one("boundary N")?;
            standard(boundary(n, a.cap.unwrap_or(n))?, format!("boundary {n}"))
        }
        BuildName::CompDelta => {
            let (k, n) = two("comp-delta K N")?;
            standard(complicial_delta(k, n, a.cap.unwrap_or(n))?, format!("comp-delta {k} {n}"))
        }
        BuildName::CompHorn => {
            let (k, n) = two("comp-horn K N")?;
            standard(complicial_horn(k, n, a.cap.unwrap_or(n))?.horn, format!("comp-horn {k} {n}"))
        }
        BuildName::HornPrime => {
            let (k, n) = two("horn-prime K N")?;
            standard(horn_prime(k, n, a.cap.unwrap_or(n))?, format!("horn-prime {k} {n}"))
        }
        BuildName::DeltaPrime => {
            let (k, n) = two("delta-prime K N")?;
            standard(delta_prime(k, n, a.cap.unwrap_or(n))?, format!("delta-prime {k} {n}"))
        }
        BuildName::DeltaDprime => {
            let (k, n) = two("delta-dprime K N")?;
            standard(delta_dprime(k, n, a.cap.unwrap_or(n))?, format!("delta-dprime {k} {n}"))
        }
        BuildName::Nerve => {
            if !a.params.is_empty() {
                return Err(Failure::Input("nerve takes no positional parameters".into()));
            }
            let (c, source) = category_of(a)?;
            let k = nerve(&c, a.cap.unwrap_or(3))?;
            ComplexDocument::from_complex(
                &StratifiedSSet::min_strat(Arc::new(k)),
                Some(format!("nerve {source}")),
                None,
            )
        }
        BuildName::Th0 | BuildName::QcatE => {
            if a.params.len() > 1 {
                return Err(Failure::Input("expected at most one input document".into()));
            }
            let has_category = a.monoid.is_some() || a.category.is_some() || a.presentation.is_some() || a.builtin.is_some();
            let (k, inner): (Arc<TruncatedSSet>, String) = if has_category {
                if !a.params.is_empty() {
                    return Err(Failure::Input("give either an input document or a category, not both".into()));
                }
                let (c, source) = category_of(a)?;
                (Arc::new(nerve(&c, a.cap.unwrap_or(3))?), format!("nerve {source}"))
            } else {
                let input = load(a.params.first().map(String::as_str))?;
                let inner = input.doc.name.clone().unwrap_or_else(|| "input".into());
                (input.complex.sset().clone(), inner)
            };
            if a.name == BuildName::Th0 {
                ComplexDocument::from_complex(&StratifiedSSet::max_strat(k), Some(format!("th0({inner})")), None)
            } else {
                let bound = a.max_dim.unwrap_or(k.cap());
                ComplexDocument::from_complex(&quasicat_e(k, bound)?, Some(format!("qcat-e({inner})")), None)
            }
        }
        BuildName::Product => {
            if a.params.len() != 2 {
                return Err(Failure::Input("product needs two input documents".into()));
            }
            if a.params.iter().filter(|p| *p == "-").count() > 1 {
                return Err(Failure::Input("only one product factor can come from stdin".into()));
            }
            let x = load(Some(&a.params[0]))?;
            let y = load(Some(&a.params[1]))?;
            let name = |l: &Loaded| l.doc.name.clone().unwrap_or_else(|| "input".into());
            let p = gproduct(&x.complex, &y.complex);
            ComplexDocument::from_complex(p.complex(), Some(format!("{} * {}", name(&x), name(&y))), None)
        }
    };
    Ok(Output::ok(doc.to_json()))
}

#[derive(Serialize)]
struct VerifyParameters {
    max_dim: usize,
}

#[derive(Serialize)]
struct VerifyPayload {
    checked_dims: usize,
    passed: bool,
    entries: Vec<EntryPayload>,
}

#[derive(Serialize)]
struct EntryPayload {
    family: Family,
    n: usize,
    k: usize,
    instances: usize,
    passed: bool,
    witnesses: Vec<WitnessPayload>,
}

#[derive(Serialize)]
struct HornFace {
    face: usize,
    simplex: String,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WitnessPayload {
    Horn { faces: Vec<HornFace> },
    Simplex { simplex: String },
}

fn verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let input = load(a.input.as_deref())?;
    let x = &input.complex;
    let max_dim = a.max_dim.unwrap_or(x.cap());
    let report = verify_weak_complicial(x, max_dim)?;
    let payload = VerifyPayload {
        checked_dims: report.checked_dims,
        passed: report.passed(),
        entries: report
            .entries
            .iter()
            .map(|e| EntryPayload {
                family: e.family,
                n: e.n,
                k: e.k,
                instances: e.instances,
                passed: e.passed(),
                witnesses: e
                    .failures
                    .iter()
                    .map(|w| match w {
                        Witness::Horn { faces } => WitnessPayload::Horn {
                            faces: faces
                                .iter()
                                .map(|&(face, s)| HornFace {
                                    face,
                                    simplex: label(x, s),
                                })
                                .collect(),
                        },
                        Witness::Simplex { simplex } => WitnessPayload::Simplex {
                            simplex: label(x, *simplex),
                        },
                    })
                    .collect(),
            })
            .collect(),
    };
    let passed = payload.passed;
    let doc = ResultDocument::new(ResultKind::Verify, vec![input.digest], VerifyParameters { max_dim }, payload);
    Ok(Output {
        text: doc.to_json(),
        code: if passed { 0 } else { 2 },
    })
}

#[derive(Serialize)]
struct TauParameters {
    n: usize,
    vertex: String,
    audit_well_defined: bool,
    limit: Option<usize>,
}

#[derive(Serialize)]
struct ClassPayload {
    representative: String,
    members: Vec<String>,
}

#[derive(Serialize)]
struct TauPayload {
    sphere_elements: usize,
    classes: Vec<ClassPayload>,
    unit: usize,
    /// `table[a][b]` is the class of `[a][b]`.
    table: Vec<Vec<usize>>,
    /// Filler used for each cell.
    fillers: Vec<Vec<String>>,
    relation: RelationDiagnostic,
    associative: bool,
    unit_law: bool,
    commutative: bool,
    inverses: Vec<Option<usize>>,
    is_group: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<AuditPayload>,
}

#[derive(Serialize)]
struct AuditPayload {
    consistent: bool,
    cells: Vec<CellAudit>,
}

fn tau(a: &TauArgs) -> Result<Output, Failure> {
    let input = load(a.input.as_deref())?;
    let x = &input.complex;
    let vertex = find(x, 0, &a.vertex)?;
    let ctx = TauContext::new(x.clone(), vertex, a.n)?;
    let partition = SpherePartition::compute(&ctx)?;
    let table = tau_table_with(&ctx, &partition)?;
    let audit = if a.audit_well_defined {
        let cells = audit_table(&ctx, &partition, &table, a.limit)?;
        Some(AuditPayload {
            consistent: cells.iter().all(|c| c.consistent),
            cells,
        })
    } else {
        None
    };
    let audit_failed = audit.as_ref().is_some_and(|a| !a.consistent);
    let payload = TauPayload {
        sphere_elements: partition.elements.len(),
        classes: table
            .classes
            .iter()
            .map(|c| ClassPayload {
                representative: label(x, c[0]),
                members: c.iter().map(|&s| label(x, s)).collect(),
            })
            .collect(),
        unit: table.unit,
        table: table.table.clone(),
        fillers: table
            .fillers
            .iter()
            .map(|r| r.iter().map(|&s| label(x, s)).collect())
            .collect(),
        relation: table.relation,
        associative: table.associative,
        unit_law: table.unit_law,
        commutative: table.commutative,
        inverses: table.inverses.clone(),
        is_group: table.is_group,
        audit,
    };
    let params = TauParameters {
        n: a.n,
        vertex: a.vertex.clone(),
        audit_well_defined: a.audit_well_defined,
        limit: a.limit,
    };
    let doc = ResultDocument::new(ResultKind::Tau, vec![input.digest], params, payload);
    Ok(Output {
        text: doc.to_json(),
        code: if audit_failed { 2 } else { 0 },
    })
}

#[derive(Serialize)]
struct Tau0Payload {
    classes: Vec<Vec<String>>,
    relation: RelationDiagnostic,
}

fn run_tau0(a: &InputArg) -> Result<Output, Failure> {
    let input = load(a.input.as_deref())?;
    let x = &input.complex;
    let t = tau0(x)?;
    let payload = Tau0Payload {
        classes: t
            .classes
            .iter()
            .map(|c| c.iter().map(|&v| label(x, v)).collect())
            .collect(),
        relation: t.relation,
    };
    let doc = ResultDocument::new(ResultKind::Tau0, vec![input.digest], (), payload);
    Ok(Output::ok(doc.to_json()))
}

#[derive(Serialize)]
struct HomotopyParameters {
    mode: &'static str,
    n: usize,
    from: String,
    to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex: Option<String>,
}

#[derive(Serialize)]
struct HomotopyPayload {
    found: bool,
    /// Nondegenerate simplices of the cylinder and their images.
    #[serde(skip_serializing_if = "Option::is_none")]
    homotopy: Option<Vec<ImagePayload>>,
}

#[derive(Serialize)]
struct ImagePayload {
    simplex: String,
    image: String,
}

fn homotopy(a: &HomotopyArgs) -> Result<Output, Failure> {
    let input = load(a.input.as_deref())?;
    let x = &input.complex;
    let (witness, params) = if let (Some(from), Some(to)) = (&a.from, &a.to) {
        let point = delta(0, x.cap())?;
        let f = point.yoneda(x, find(x, 0, from)?)?;
        let g = point.yoneda(x, find(x, 0, to)?)?;
        let params = HomotopyParameters {
            mode: "vertices",
            n: 0,
            from: from.clone(),
            to: to.clone(),
            vertex: None,
        };
        (simple_homotopic(&f, &g)?, params)
    } else if let (Some(n), Some(v), Some(al), Some(be)) = (a.n, &a.vertex, &a.alpha, &a.beta) {
        let ctx = TauContext::new(x.clone(), find(x, 0, v)?, n)?;
        let params = HomotopyParameters {
            mode: "sphere",
            n,
            from: al.clone(),
            to: be.clone(),
            vertex: Some(v.clone()),
        };
        (ctx.homotopic(find(x, n, al)?, find(x, n, be)?)?, params)
    } else {
        return Err(Failure::Input("give --from/--to, or --n, --vertex, --alpha, --beta".into()));
    };
    let payload = HomotopyPayload {
        found: witness.is_some(),
        homotopy: witness.map(|w| describe_homotopy(&w)),
    };
    let doc = ResultDocument::new(ResultKind::Homotopy, vec![input.digest], params, payload);
    Ok(Output::ok(doc.to_json()))
}

fn describe_homotopy(w: &HomotopyWitness) -> Vec<ImagePayload> {
    let h = &w.homotopy;
    let (src, tgt) = (h.source(), h.target());
    (0..=src.cap())
        .flat_map(|d| src.sset().nondegenerate(d).collect::<Vec<_>>())
        .map(|p| ImagePayload {
            simplex: label(src, p),
            image: label(tgt, h.apply(p)),
        })
        .collect()
}

/// Runs a parsed command line, honoring `--threads`.
pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Failure::Input(format!("thread pool: {e}")))?
            .install(|| execute(cli)),
        None => execute(cli),
    }
}
