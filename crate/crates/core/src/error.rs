use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {symbol:?} at position {position} (expected 0 or 1)")]
    Alphabet { symbol: char, position: usize },

    #[error("word has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },

    #[error("word has {found} ones, expected {expected}")]
    OneCount { expected: usize, found: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid rank matrix: {0}")]
    InvalidRank(String),

    #[error("invalid puzzle path: {0}")]
    InvalidPath(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

impl Error {
    /// True for failures caused by the caller's input, as opposed to broken
    /// internal invariants.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
