//! The two concrete algebras behind the abstract structure machinery:
//! multivector fields with polynomial coefficients and polydifferential
//! Hochschild cochains, together with the HKR comparison map and
//! finite-dimensional truncation windows for rank computations.

mod boxes;
mod error;
mod literal;
mod model;
mod multivector;
mod ops;
mod poly;

pub use boxes::{CohomologyReport, TruncationBox};
pub use error::HochschildError;
pub use literal::parse_op;
pub use model::{
    corrupted_gerstenhaber_structure, gerstenhaber_model, gerstenhaber_structure,
    hkr_morphism, hochschild_box_structure, hochschild_dgla_model, hochschild_dgla_structure,
    perturbed_hkr_morphism, MultivectorLetters,
};
pub use multivector::MultiVector;
pub use ops::{OpKey, PolyDiffOp};
pub use poly::{Exponents, Polynomial};
