//! Exact-arithmetic workbench for linear network coding over rings.
//!
//! Edge operators live in a [`rings::Ring`]; networks are DAGs whose
//! transfer blocks are path sums of operator products. The crate verifies
//! given (scalar or fractional) solutions, searches finite rings
//! exhaustively for scalar ones, and tests Dedekind finiteness and
//! k-stability of finite rings.

pub mod catalog;
pub mod error;
pub mod linalg;
pub mod netmodel;
pub mod rings;
pub mod search;

pub use error::{Error, Result};
