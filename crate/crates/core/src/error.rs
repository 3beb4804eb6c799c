use thiserror::Error;

use crate::shooting::ScanPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integrator step size underflow at r = {r} (h = {h:e})")]
    StepUnderflow { r: f64, h: f64 },

    #[error("spacelike condition violated at r = {r}")]
    NotSpacelike { r: f64 },

    #[error("no bracket found after {} scan points", trace.len())]
    NoBracket { trace: Vec<ScanPoint> },

    #[error("root finder did not converge after {iterations} iterations (bracket [{lo}, {hi}])")]
    NotConverged { lo: f64, hi: f64, iterations: usize },

    #[error("outside the regime of validity: {0}")]
    OutOfRegime(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
