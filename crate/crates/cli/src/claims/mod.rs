//! Engine side of the claims: one producer per section.

mod curves;
mod equiv;
mod group_data;
mod stab;

use std::fmt::Display;

use crate::{CliError, Computed, Result, RunOptions, Section};

pub(crate) fn fail(e: impl Display) -> CliError {
    CliError::Compute(e.to_string())
}

pub fn produce(section: Section, opts: &RunOptions) -> Result<Vec<Computed>> {
    match section {
        Section::Stability => stab::produce(opts),
        Section::Curves => curves::produce(opts),
        Section::Groups => group_data::produce(),
        Section::Equivpic => equiv::produce(opts),
        Section::All => {
            let mut out = Vec::new();
            for s in Section::PARTS {
                out.extend(produce(s, opts)?);
            }
            Ok(out)
        }
    }
}

pub use stab::field_axioms;
