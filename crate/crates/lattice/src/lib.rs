//! Intersection lattices on X (rank 2) and on surfaces, parametric Zariski
//! decomposition of divisor families affine in (u, v), thresholds and volumes.

pub mod affine;
pub mod catalog;
pub mod region;
pub mod surface;
pub mod threefold;
pub mod zariski;

pub use affine::AffineFn2;
pub use region::{Region, SignPattern};
pub use surface::{DivisorClass, RestrictionTable, SurfaceLattice, SymClass};
pub use threefold::ThreefoldLattice;
pub use zariski::{
    check_chamber, pseff_threshold_surface, pseff_threshold_threefold, zariski_decompose, Curve, Decomposition,
    IntersectionForm, Threshold, ZariskiChamber, ZariskiOptions,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("bad region: {0}")]
    Region(String),
    #[error("lattice mismatch: {0}")]
    Mismatch(String),
    #[error("missing restriction entry for {0}")]
    MissingEntry(String),
    #[error("Gram matrix on support {0} is not negative definite")]
    NotNegativeDefinite(String),
    #[error("family is never pseudo-effective: {0}")]
    NeverPseff(String),
    #[error("coefficient is not affine in (u, v): {0}")]
    NotAffine(String),
    #[error("unknown basis element {0}")]
    UnknownBasis(String),
    #[error("invalid lattice data: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}
