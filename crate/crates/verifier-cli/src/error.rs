use serde::{Deserialize, Serialize};
use thiserror::Error;

use inflection::curve::CurveError;
use inflection::family::FamilyError;
use inflection::jet::JetError;
use inflection::report::DegenerateReason;
use inflection::rhs::RhsError;
use inflection::solver::SolveError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degenerate: {0}")]
    Degenerate(DegenerateReason),
    #[error("THEOREM MISMATCH: {0}")]
    Mismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Outcome classes, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Degenerate,
    InvalidInput,
    TheoremMismatch,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Degenerate => 2,
            Status::InvalidInput => 3,
            Status::TheoremMismatch => 4,
            Status::InternalError => 5,
        }
    }
}

impl RunError {
    pub fn status(&self) -> Status {
        match self {
            RunError::Invalid(_) => Status::InvalidInput,
            RunError::Degenerate(_) => Status::Degenerate,
            RunError::Mismatch(_) => Status::TheoremMismatch,
            RunError::Internal(_) => Status::InternalError,
        }
    }
}

impl From<SolveError> for RunError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Degenerate(r) => RunError::Degenerate(r),
            SolveError::Disagreement(d) => RunError::Mismatch(d),
            SolveError::Jet(j) => j.into(),
            SolveError::Curve(CurveError::DegenerateImage) => RunError::Degenerate(DegenerateReason::ImageInFiber),
            other => RunError::Invalid(other.to_string()),
        }
    }
}

impl From<JetError> for RunError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::Degenerate(r) => RunError::Degenerate(r),
            JetError::Curve(CurveError::DegenerateImage) | JetError::ZeroSection => {
                RunError::Degenerate(DegenerateReason::ImageInFiber)
            }
            other => RunError::Invalid(other.to_string()),
        }
    }
}

impl From<FamilyError> for RunError {
    fn from(e: FamilyError) -> Self {
        RunError::Invalid(e.to_string())
    }
}

impl From<RhsError> for RunError {
    fn from(e: RhsError) -> Self {
        RunError::Invalid(e.to_string())
    }
}
