use thiserror::Error;

#[derive(Error, Debug)]
pub enum CoalgebraError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Core(#[from] shak_core::CoreError),

    /// The extension equations for a word came out unsolvable. With a
    /// well-formed sign convention this cannot happen, so it is reported
    /// as a convention violation rather than swallowed.
    #[error("extension equations inconsistent at word {word}: {detail}")]
    ConventionViolation { word: String, detail: String },

    /// The extension equations left a degree of freedom; the cooperations
    /// failed to pin the value, which contradicts cofreeness.
    #[error("extension not unique at word {word} (block weight {weight})")]
    NotUnique { word: String, weight: usize },

    /// Composition or corestriction needed a table entry that was never
    /// computed.
    #[error("missing table entry for word {word}")]
    MissingEntry { word: String },

    /// Cogenerator data failed a well-formedness check before extension.
    #[error("invalid symbol at {word}: {detail}")]
    BadSymbol { word: String, detail: String },
}
