use thiserror::Error;

#[derive(Debug, Error)]
pub enum HochschildError {
    #[error(transparent)]
    Core(#[from] shak_core::CoreError),

    #[error(transparent)]
    Structures(#[from] shak_structures::StructuresError),

    #[error("malformed input: {0}")]
    Malformed(String),
}
