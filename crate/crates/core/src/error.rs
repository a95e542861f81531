use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A value that must be finite was NaN or infinite.
    #[error("invalid argument: {what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    /// A scan input that may be `-inf` but never `+inf` or NaN.
    #[error("invalid argument: element {index} of log-domain input is {value}")]
    InvalidLogValue { index: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `exp(logmag)` does not fit in an f64.
    #[error("overflow: exp({logmag}) is not representable")]
    Overflow { logmag: f64 },

    #[error("coefficient arrays differ in length: a has {a}, b has {b}")]
    LengthMismatch { a: usize, b: usize },

    /// The solver divides by the cumulative product of `a`; zero is unsupported.
    #[error("unsupported input: a[{index}] = 0 (use the pairscan solver)")]
    ZeroCoefficient { index: usize },

    /// The cumulative product of `a` left the normal f64 range.
    #[error("unsupported input: cumulative product of a leaves f64 range at index {index}")]
    ProductOutOfRange { index: usize },

    #[error("index t = {t} out of range 1..={n}")]
    IndexOutOfRange { t: usize, n: usize },

    #[error("fragment {fragment}: {source}")]
    Fragment {
        fragment: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for inputs a solver cannot handle by construction (as opposed to
    /// malformed arguments). The caller should switch solvers.
    pub fn is_unsupported_input(&self) -> bool {
        match self {
            Error::ZeroCoefficient { .. } | Error::ProductOutOfRange { .. } => true,
            Error::Fragment { source, .. } => source.is_unsupported_input(),
            _ => false,
        }
    }
}
