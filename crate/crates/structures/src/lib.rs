//! Homotopy algebra structures and their morphisms, presented by
//! cogenerator symbols over the shuffle-quotient coalgebra, with
//! weight-bounded verification of the defining identities.

mod check;
mod error;
mod kind;
mod morphism;
mod structure;
pub mod synthetic;
mod text;

pub use check::{check_morphism, check_square_zero, Violation, ViolationReport};
pub use error::StructuresError;
pub use kind::{signature_of, signature_string, StructureKind};
pub use morphism::{compose, MorphismData};
pub use structure::HomotopyStructure;
pub use text::{
    parse_map, parse_structure, render_map, render_structure, MapFile, StructureFile,
};
