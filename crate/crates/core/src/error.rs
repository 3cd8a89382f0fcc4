use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A computation exceeded the configured size budget. The budget is a
    /// guard against accidental blow-ups, not a tolerance: results are never
    /// silently truncated.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
}
