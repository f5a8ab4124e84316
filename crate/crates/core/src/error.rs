use thiserror::Error;

/// Errors raised by the stable-law routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StableError {
    #[error("parameter domain error: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance: {what} (estimate {err_est:.3e})")]
    Quadrature { what: String, err_est: f64 },

    #[error("density {value:.3e} at x = {x} is below the log-domain floor")]
    DensityFloor { x: f64, value: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("optimizer did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid data: {0}")]
    Data(String),
}

impl StableError {
    /// True for errors caused by bad inputs rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(self, StableError::Domain(_) | StableError::Data(_))
    }
}

pub type Result<T> = std::result::Result<T, StableError>;
