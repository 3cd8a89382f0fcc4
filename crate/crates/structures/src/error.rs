use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructuresError {
    #[error(transparent)]
    Core(#[from] shak_core::CoreError),

    #[error(transparent)]
    Coalgebra(#[from] shak_coalgebra::CoalgebraError),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("line {line}, column {column}: {detail}")]
    Parse {
        line: usize,
        column: usize,
        detail: String,
    },

    /// A check or composition asked for more weight than the inputs carry.
    #[error("weight bound {asked} exceeds the declared bound {declared}")]
    BeyondBound { asked: usize, declared: usize },
}
