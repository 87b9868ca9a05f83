use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("memory budget exceeded: {required} bytes required, budget {budget} bytes")]
    Memory { required: u64, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of an iterative or adaptive numeric method.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Quadrature { .. } | Error::NonConvergence(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
