//! Linearized Picard groups Pic(G,C) of plane quartics from the signature of a group action, the
//! degree of a generator of the free part, and the candidates for Pic^G(C) allowed by the exact
//! sequence 1 → Hom(G,ℂ*) → Pic(G,C) → Pic^G(C) → H²(G,ℂ*) → 1.

pub mod finite;
pub mod sequence;
pub mod signature;
pub mod table;

pub use groups::AbelianGroupStructure;
pub use sequence::{degree_two_feasible, pic_invariant_candidates, resolve, Fact, SequenceData};
pub use signature::{pic_glc, rh_check, PicStructure, Signature};
pub use table::{bundled_table, evaluate_row, evaluate_table, RowReport, TableRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PicError {
    #[error("bad signature {0:?}")]
    Parse(String),
    #[error("signature {0} has positive quotient genus")]
    PositiveGenus(String),
    #[error("signature {0} has zero orbifold Euler characteristic")]
    Euclidean(String),
    #[error("generator degree {0} is not an integer")]
    NonIntegralDegree(String),
    #[error("Hom(G, C*) = {hom} does not embed in the torsion {torsion}")]
    NoEmbedding { hom: String, torsion: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PicError>;
