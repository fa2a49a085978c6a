//! Finite subgroups of PGL₄ over Q(ζ₂₄): canonical points and matrices, enumeration by closure,
//! orbits, stabilizers, abelianizations and fixed loci.

pub mod abelian;
pub mod data;
pub mod fixed;
pub mod group;
pub mod proj;

pub use abelian::AbelianGroupStructure;
pub use data::{bundled, Bundle, GeneratorSet};
pub use fixed::{fixed_locus, Subspace};
pub use group::{is_normal, MatrixGroup};
pub use proj::{ProjMatrix, ProjPoint};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Exact(#[from] exactnum::ExactError),
    #[error("singular matrix")]
    Singular,
    #[error("zero vector is not a projective point")]
    ZeroPoint,
    #[error("group order exceeds the cap {0}")]
    CapExceeded(usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("eigenvalues of {0} do not split over the field")]
    NoSplit(String),
    #[error("unknown generator set {0:?}")]
    UnknownSet(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GroupError>;
