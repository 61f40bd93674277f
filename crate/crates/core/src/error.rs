use crate::dist_calc::Site;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("quantum number must be >= 1, got {0}")]
    InvalidQuantumNumber(usize),

    #[error("invalid well configuration: {0}")]
    InvalidConfig(String),

    #[error("differentiating a boundary delta would produce a delta derivative")]
    DeltaDerivativeUnsupported,

    #[error("rational prefactor is singular at the {0} wall and its numerator does not vanish there")]
    NonRemovableSingularity(Site),

    #[error("expression contains a boundary delta with a non-constant coefficient; sift it first")]
    UnsiftedDelta,

    #[error("product of two rational prefactors is not representable")]
    PoleProductUnsupported,

    #[error("{0} of a function with a rational prefactor is not supported")]
    PoleUnsupported(&'static str),

    #[error("product of two delta distributions is undefined")]
    DeltaProductUnsupported,

    #[error("expressions live on wells of different width ({0} vs {1})")]
    LengthMismatch(f64, f64),

    #[error("wave packet norm {norm} deviates from 1 by more than {tolerance}")]
    NormalizationViolation { norm: f64, tolerance: f64 },

    #[error("invalid packet specification: {0}")]
    InvalidPacket(String),

    #[error("invalid time series: {0}")]
    InvalidTimeSeries(String),

    #[error("finite well binds only {available} states, {requested} requested")]
    InsufficientDepth { requested: usize, available: usize },

    #[error("could not isolate the root for finite-well level {0}")]
    BracketingFailure(usize),

    #[error("finite-well level {0} has not been solved")]
    UnsolvedLevel(usize),

    #[error("grid quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("expectation value has imaginary part {imag:e}, expected a real result")]
    NonRealExpectation { imag: f64 },

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
