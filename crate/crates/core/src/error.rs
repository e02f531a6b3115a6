use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidSymbolName(String),
    #[error("symbol `{0}` needs a finite, nonzero approximation")]
    InvalidApproximation(String),
    #[error("values come from different symbol tables")]
    MixedSymbolTables,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("row entries have gcd {0}, expected 1")]
    NotPrimitive(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("entry {0} is not rational")]
    NonRational(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
