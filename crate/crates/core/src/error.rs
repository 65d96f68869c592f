use thiserror::Error;

/// Errors produced by the statistics and reference computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no points")]
    NoPoints,

    #[error("invalid interval ({a}, {b}]: left end exceeds right end")]
    InvalidInterval { a: f64, b: f64 },

    #[error("point {value} at index {index} lies outside the window ({start}, {end}]")]
    OutsideWindow {
        index: usize,
        value: f64,
        start: f64,
        end: f64,
    },

    #[error("points are not non-decreasing at index {0}")]
    Unsorted(usize),

    #[error("arity {arity} outside the supported range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },

    #[error("intervals overlap: ({0}, {1}] and ({2}, {3}]")]
    OverlappingIntervals(f64, f64, f64, f64),

    #[error("below supported range: t = {t} < {min}")]
    BelowSupportedRange { t: f64, min: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge at the order cap: last = {last:e}, previous = {previous:e}")]
    NoConvergence { last: f64, previous: f64 },

    #[error("series tail bound {tail:e} not achievable within degree cap {cap}")]
    SeriesCap { tail: f64, cap: usize },

    #[error("differentiation unstable: p2({t}) = {value:e}")]
    DifferentiationUnstable { t: f64, value: f64 },

    #[error("eigensolver did not converge after {0} iterations")]
    EigenNoConvergence(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("non-monotone at line {line}")]
    NonMonotone { line: usize },

    #[error("duplicate ordinate at line {line}")]
    Duplicate { line: usize },

    #[error("empty table")]
    EmptyTable,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
