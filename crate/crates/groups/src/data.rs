use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::MatrixGroup;
use crate::proj::ProjMatrix;
use crate::{GroupError, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub name: String,
    pub location: String,
    pub generators: Vec<String>,
}

/// Named matrices and the generator sets built from them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bundle {
    pub matrices: BTreeMap<String, ProjMatrix>,
    pub sets: Vec<GeneratorSet>,
}

pub fn bundled() -> Bundle {
    serde_json::from_str(include_str!("../data/generators.json")).expect("bundled generator file parses")
}

impl Bundle {
    pub fn matrix(&self, name: &str) -> Result<ProjMatrix> {
        self.matrices.get(name).cloned().ok_or_else(|| GroupError::UnknownSet(name.into()))
    }

    pub fn generators(&self, set: &str) -> Result<Vec<ProjMatrix>> {
        let s = self.sets.iter().find(|s| s.name == set).ok_or_else(|| GroupError::UnknownSet(set.into()))?;
        s.generators.iter().map(|g| self.matrix(g)).collect()
    }

    pub fn group(&self, set: &str) -> Result<MatrixGroup> {
        MatrixGroup::enumerate(&self.generators(set)?, 1000)
    }
}
