//! Line bundles on binary curves: two rational curves glued at `g + 1` nodes.
//!
//! The crate computes exact cohomology of line bundles given by a
//! multidegree and a gluing vector, models the compactified Picard scheme
//! through its strata on partial normalizations, and scans Brill-Noether
//! loci exhaustively over small prime fields.

pub mod algebra;
pub mod brill_noether;
pub mod bundle;
pub mod cohomology;
pub mod curve;
mod error;
pub mod json;
pub mod picard;

pub use error::{Error, Result};

/// Version string embedded into reports and cache entries.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
