use thiserror::Error;

/// Errors raised while building or querying complexes, maps and invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    TableShape(String),

    #[error("dangling reference: {what} refers to dim {dim} index {index}, which does not exist")]
    DanglingReference {
        what: String,
        dim: usize,
        index: usize,
    },

    #[error("simplicial identity {identity} fails at dim {dim} on simplex {simplex}")]
    IdentityViolation {
        identity: String,
        dim: usize,
        simplex: String,
    },

    #[error("index {index} out of range for a simplex of dim {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("degeneracy of a dim {dim} simplex exceeds the dimension cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("map is not well defined at {simplex} (index {index}): {detail}")]
    NotWellDefined {
        simplex: String,
        index: usize,
        detail: String,
    },

    #[error("vertex {0} cannot be thin")]
    ThinVertex(String),

    #[error("map sends thin simplex {0} to a non-thin simplex")]
    NotStratified(String),

    #[error("dimension cap {cap} is too small, need at least {needed}")]
    CapTooSmall { needed: usize, cap: usize },

    #[error("k = {k} is out of range for n = {n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("the primed complexes need n >= 2, got n = {0}")]
    PrimeNeedsDimTwo(usize),

    #[error("verification bound {bound} exceeds the dimension cap {cap}")]
    BoundExceedsCap { bound: usize, cap: usize },

    #[error("horn faces {first} and {second} disagree on their common boundary")]
    BoundaryMismatch { first: usize, second: usize },

    #[error("horn simplex {0} is thin but its image is not")]
    ThinnessViolation(String),

    #[error("maps disagree on the subcomplex they are supposed to fix")]
    RestrictionMismatch,

    #[error("no filler for the horn Λ^{k}[{n}] with faces {faces:?}")]
    NoFiller {
        k: usize,
        n: usize,
        faces: Vec<String>,
    },

    #[error("{0} does not have constant boundary at the chosen vertex")]
    NotSphereElement(String),

    #[error("not a quasi-category: {0}")]
    NotQuasiCategory(String),

    #[error("not a Kan complex: {0}")]
    NotKan(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("presentation exceeds the size bound {0}")]
    PresentationTooLarge(usize),

    #[error("not homotopic: {0}")]
    NotHomotopic(String),

    #[error("maps do not share a source and target")]
    MapMismatch,

    #[error("unknown simplex label {0:?}")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures that are mathematical outcomes (no filler, failed
    /// verification) rather than malformed input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::NoFiller { .. } | Error::NotQuasiCategory(_) | Error::NotKan(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
