//! Exact global residues on affine space over ℚ.
//!
//! The crate computes global (total-sum) residues of polynomial and rational
//! forms with respect to univariate polynomials, systems in separated
//! variables, and general zero-dimensional systems, and checks every result
//! against explicit integrality and height bounds.

pub mod arith;
pub mod certify;
pub mod cli;
pub mod eliminate;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod residue_sep;
pub mod residue_uni;
pub mod roots;
pub mod trace_weil;
pub mod transform;

pub use arith::{BigInt, BigRat, ExponentVec, MultiPoly, UniPoly};
pub use error::{Error, Result};
