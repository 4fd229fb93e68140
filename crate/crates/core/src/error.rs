use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integrality violation: {0}")]
    Integrality(String),
    #[error("construction failure: {0}")]
    Construction(String),
    #[error("weight decomposition failure: {0}")]
    Decomposition(String),
    #[error("budget exceeded during {stage}")]
    Budget {
        stage: String,
        partial: Option<Box<crate::isocheck::VerificationReport>>,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
