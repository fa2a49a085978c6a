//! Determinantal constructions and polynomial checks: maximal minors of linear-form matrices,
//! pencil determinants, ideal spans and membership by graded linear algebra, self-composition of
//! rational maps, point counts over prime fields, and plane-curve linear systems with contact
//! conditions.

pub mod data;
pub mod hermitian;
pub mod ideal;
pub mod map;
pub mod matrix;
pub mod plane;

pub use data::{bundled, CurveBundle};
pub use ideal::{orbit_vanishing, reduce_power, symbolic_orbit, HomIdeal};
pub use map::{map_self_compose, Composition, RationalMap};
pub use matrix::{maximal_minors, pencil_determinant, poly_det, LinearFormMatrix, NormalForm, Pencil, Ratio};
pub use plane::{finite_field_points, finite_field_points_by_charts, linear_system_with_conditions};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Exact(#[from] exactnum::ExactError),
    #[error(transparent)]
    Group(#[from] groups::GroupError),
    #[error("shape: {0}")]
    Shape(String),
    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("singular point {0}")]
    SingularPoint(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("prime {0} divides every coefficient")]
    PrimeDividesAll(u64),
    #[error("coefficient {0} is not an integer modulo p")]
    NotIntegral(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CurveError>;

/// Indices of x0..x3.
pub fn xvars() -> Vec<usize> {
    ["x0", "x1", "x2", "x3"].iter().map(|n| exactnum::var_index(n).unwrap()).collect()
}

/// Indices of y0..y3.
pub fn yvars() -> Vec<usize> {
    ["y0", "y1", "y2", "y3"].iter().map(|n| exactnum::var_index(n).unwrap()).collect()
}

/// Index of a named variable known to exist.
pub fn var(name: &str) -> usize {
    exactnum::var_index(name).unwrap_or_else(|| panic!("unknown variable {name}"))
}
