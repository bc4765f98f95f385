use thiserror::Error;

/// Algebraic failures raised by ring arithmetic and the decomposition engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    SpecMismatch,
    #[error("element is not a unit")]
    NotUnit,
    #[error("endomorphism does not apply to this ring")]
    EndoSpecMismatch,
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("level {level} outside 1..={cap}")]
    BadLevel { level: usize, cap: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not a unit in the corner ring")]
    NotUnitInCorner,
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u128),
    #[error("postcondition violated: {0}")]
    PostconditionViolated(&'static str),
    #[error("ring is not a matrix ring over a prime field")]
    NotPrimeField,
    #[error("element is not nilpotent at level {level} within {bound} powers")]
    NotNilpotentAtLevel { level: usize, bound: usize },
    #[error("element is not idempotent modulo I")]
    NotApproximateIdempotent,
    #[error("iteration did not converge")]
    NoConvergence,
    #[error("corner block is not a unit in its corner")]
    CornerNotUnit,
    #[error("correction equations not satisfied at level {0}")]
    ResidualNonzero(usize),
    #[error("refined idempotent does not commute with x at level {0}")]
    CommutationNotAchieved(usize),
    #[error("certificate failed verification: {0:?}")]
    CertificateInvalid(Vec<crate::engine::Violation>),
}

impl Error {
    /// Stable variant name, used by the CLI on standard error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SpecMismatch => "SpecMismatch",
            Error::NotUnit => "NotUnit",
            Error::EndoSpecMismatch => "EndoSpecMismatch",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::InvalidElement(_) => "InvalidElement",
            Error::BadLevel { .. } => "BadLevel",
            Error::NotIdempotent => "NotIdempotent",
            Error::NotUnitInCorner => "NotUnitInCorner",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::PostconditionViolated(_) => "PostconditionViolated",
            Error::NotPrimeField => "NotPrimeField",
            Error::NotNilpotentAtLevel { .. } => "NotNilpotentAtLevel",
            Error::NotApproximateIdempotent => "NotApproximateIdempotent",
            Error::NoConvergence => "NoConvergence",
            Error::CornerNotUnit => "CornerNotUnit",
            Error::ResidualNonzero(_) => "ResidualNonzero",
            Error::CommutationNotAchieved(_) => "CommutationNotAchieved",
            Error::CertificateInvalid(_) => "CertificateInvalid",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
