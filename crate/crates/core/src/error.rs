use thiserror::Error;

/// Errors raised by the Fock-space, Rindler, teleportation and entropy routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An occupation index or mode label does not exist in the space.
    #[error("index error on mode `{mode}`: {detail}")]
    Index { mode: String, detail: String },

    /// Two operands cannot be combined (duplicate labels, mismatched spaces).
    #[error("composition error: {0}")]
    Composition(String),

    /// A numerical precondition or postcondition was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A physical parameter lies outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Conditioning on a measurement outcome with (numerically) zero probability.
    #[error("degenerate outcome (l={l}, m={m}): probability {probability:e}")]
    DegenerateOutcome { l: u8, m: u8, probability: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn index(mode: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Index {
            mode: mode.into(),
            detail: detail.into(),
        }
    }
}
