use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("an operation alphabet needs at least one symbol")]
    EmptyAlphabet,
    #[error("arity {0} is larger than the supported maximum of 255 variables")]
    ArityTooLarge(usize),
    #[error("invalid tree shape: {0}")]
    InvalidShape(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation of degree {perm} applied to an arity-{poly} polynomial")]
    DegreeMismatch { perm: usize, poly: usize },
    #[error("graft position {position} outside 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("alphabet mismatch: {left} vs {right} operations")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operation index {op} outside an alphabet of {alphabet}")]
    OpOutOfRange { op: usize, alphabet: usize },
    #[error("basis index {index} out of range (basis size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("unknown presentation `{0}` (builtins: mag, com, as, lie, nov)")]
    UnknownPresentation(String),
    #[error("arity {n} outside the supported range 1..={bound}")]
    ArityOutOfBounds { n: usize, bound: usize },
    #[error("derived alphabet must have an even number of symbols, found {0}")]
    NotDerivedAlphabet(usize),
    #[error("operands live in truncations {0} and {1}")]
    TruncationMismatch(u32, u32),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("presentation file: {0}")]
    PresentationFile(String),
    #[error("{0}")]
    Io(String),
}

/// A syntax or well-formedness error in an expression, with the byte offset
/// where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}
