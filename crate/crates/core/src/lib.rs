//! Exact linear algebra over graded rational vector spaces.
//!
//! Everything downstream works with sparse [`Element`]s over an enumerated
//! [`GradedBasis`] and solves linear systems exactly over the rationals.
//! There is deliberately no floating point anywhere in this crate.

mod basis;
mod element;
mod error;
mod koszul;
mod scalar;
mod solver;

pub use basis::{BasisId, GradedBasis};
pub use element::Element;
pub use error::CoreError;
pub use koszul::{koszul_sign, sort_by_key_with_sign};
pub use scalar::Scalar;
pub use solver::{
    solve_linear, FactoredSystem, SolveOutcome, SolveReport, SparseMatrix, SparseVec,
    DEFAULT_SOLVER_CAP,
};
