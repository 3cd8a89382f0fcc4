//! Words in a cofree coalgebra with two cooperations, their normal forms
//! modulo shuffles, and solvers that extend cogenerator-level data to full
//! coderivations and coalgebra morphisms.
//!
//! Everything is exact: coefficients are rationals from `shak_core`, and
//! word sets are kept in deterministic canonical order throughout.

mod ctx;
mod enumerate;
mod error;
mod extend;
mod lincomb;
mod ops;
mod word;

pub use ctx::{CoalgebraCtx, Conventions, CowElement, PairElement, TensElement};
pub use error::CoalgebraError;
pub use extend::{
    compose_tables, embed_letters, extend, invert_unipotent, verify_coderivation,
    verify_morphism, ExtendMode, Extender, Symbol, Table,
};
pub use lincomb::LinComb;
pub use word::{TensorWord, WedgeWord};
