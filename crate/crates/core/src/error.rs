use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e} exceeds {allowed:.3e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("eigenvalue {eigenvalue:.6e} is below the PSD clamp threshold {threshold:.3e}")]
    NegativeSpectrum { eigenvalue: f64, threshold: f64 },

    #[error("function {function} is undefined or overflows at {argument:.6e}")]
    FunctionUndefined { function: String, argument: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid norm spec {0:?}")]
    InvalidNormSpec(String),

    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::NegativeSpectrum { .. }
                | Error::FunctionUndefined { .. }
        )
    }
}
