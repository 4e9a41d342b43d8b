//! Sources of examples: finite categories and monoids, their nerves, the
//! maximal and equivalence-marked stratifications on them, and an
//! independent computation of homotopy groups of Kan complexes.

mod category;
mod nerve;
mod oracle;
mod presentation;

pub use category::{builtin, CategoryFile, FiniteCategory, MonoidFile, Morphism, BUILTINS};
pub use nerve::{homotopy_category, nerve, quasicat_e, th0};
pub use oracle::{check_kan, pi_oracle};
pub use presentation::{monoid_from_presentation, Presentation, DEFAULT_PRESENTATION_BOUND};
