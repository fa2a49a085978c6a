//! Exact arithmetic: rationals, the cyclotomic field Q(ζ₂₄), sparse polynomials
//! over it, and piecewise polynomial integration.

pub mod cyclo;
pub mod linalg;
pub mod parse;
pub mod piecewise;
pub mod poly;
pub mod rat;

pub use cyclo::CycloNum;
pub use piecewise::{PiecewisePoly1D, UPoly};
pub use poly::{var_index, Mono, MultiPoly, NV, VARS};
pub use rat::{fmt_rat, int, parse_rat, rat, Rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("coefficient is not rational")]
    NotRational,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(String),
    #[error("shape error: {0}")]
    Shape(String),
}

/// Shorthand for parsing a polynomial literal known to be valid.
pub fn poly(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

/// Shorthand for parsing a field-element literal known to be valid.
pub fn cyc(s: &str) -> CycloNum {
    s.parse().unwrap_or_else(|e| panic!("bad field literal {s:?}: {e}"))
}

#[cfg(feature = "serde")]
pub mod serde_str;
