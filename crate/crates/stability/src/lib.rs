//! S-invariants of the flags used to bound β on X: S_X(S), S(W;C), S(W;F), S(W;O) and the
//! two sufficient bounds they feed.

pub mod compute;
pub mod flag;
pub mod report;
mod serde_util;

pub use compute::{s_curve, s_curve_symbolic, s_divisor, s_exceptional, s_point, CurveTerm, Setup, SymbolicCurveTerm};
pub use flag::{FlagDescriptor, IncidenceProfile, Scenario};
pub use report::{beta_verdict, catalogue, evaluate, evaluate_all, BoundVerdict, EvalOptions, Outcome, SPoly, SReport, SValue, Verdict};

use lattice::LatticeError;

#[derive(Debug, thiserror::Error)]
pub enum StabilityError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("flag {0}")]
    Flag(String),
    #[error("incidence profile {0}")]
    Profile(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, StabilityError>;
