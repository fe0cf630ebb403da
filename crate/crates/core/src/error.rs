use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nesting depth k must be at least 1")]
    ZeroDepth,
    #[error("p = {p} is above the exhaustive enumeration limit {limit}")]
    EnumerationTooLarge { p: usize, limit: usize },
    #[error("decomposition {positions:?} is not lax for k = {k}")]
    NotLax { k: usize, positions: Vec<usize> },
    #[error("decomposition {positions:?} is not canonical for k = {k}")]
    NotCanonical { k: usize, positions: Vec<usize> },
    #[error("letter {letter} is outside the alphabet 1..={k}")]
    LetterOutOfAlphabet { k: usize, letter: u8 },
    #[error("mismatched nesting depths {0} and {1}")]
    DepthMismatch(usize, usize),
    #[error("k = {k} is not supported here: {reason}")]
    UnsupportedDepth { k: usize, reason: &'static str },
    #[error("epsilon must be strictly positive")]
    NonPositiveEpsilon,
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("cannot parse decimal {0:?}")]
    ParseDecimal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
