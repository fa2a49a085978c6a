use std::collections::BTreeMap;

use exactnum::{CycloNum, MultiPoly};
use serde::{Deserialize, Serialize};

use crate::ideal::HomIdeal;
use crate::map::RationalMap;
use crate::{CurveError, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyEntry {
    pub location: String,
    #[serde(with = "exactnum::serde_str::poly_vec")]
    pub polys: Vec<MultiPoly>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub location: String,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointEntry {
    pub location: String,
    pub points: Vec<Vec<String>>,
}

/// Named polynomial lists, matrices and points used by the verifications.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveBundle {
    pub polys: BTreeMap<String, PolyEntry>,
    pub matrices: BTreeMap<String, MatrixEntry>,
    pub points: BTreeMap<String, PointEntry>,
}

pub fn bundled() -> CurveBundle {
    serde_json::from_str(include_str!("../data/curves.json")).expect("bundled curve file parses")
}

fn unknown(name: &str) -> CurveError {
    CurveError::Shape(format!("no bundled entry {name:?}"))
}

impl CurveBundle {
    pub fn polys(&self, name: &str) -> Result<Vec<MultiPoly>> {
        Ok(self.polys.get(name).ok_or_else(|| unknown(name))?.polys.clone())
    }

    pub fn ideal(&self, name: &str) -> Result<HomIdeal> {
        HomIdeal::in_x(self.polys(name)?)
    }

    pub fn map(&self, name: &str) -> Result<RationalMap> {
        RationalMap::new(self.polys(name)?)
    }

    pub fn matrices(&self, name: &str) -> Result<Vec<Vec<Vec<MultiPoly>>>> {
        let e = self.matrices.get(name).ok_or_else(|| unknown(name))?;
        e.matrices
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| r.iter().map(|s| s.parse().map_err(CurveError::from)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn points(&self, name: &str) -> Result<Vec<Vec<CycloNum>>> {
        let e = self.points.get(name).ok_or_else(|| unknown(name))?;
        e.points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|s| {
                        let f: MultiPoly = s.parse()?;
                        f.to_constant().ok_or_else(|| CurveError::Shape(format!("{s} is not a constant")))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn location(&self, name: &str) -> Option<&str> {
        self.polys
            .get(name)
            .map(|e| e.location.as_str())
            .or_else(|| self.matrices.get(name).map(|e| e.location.as_str()))
            .or_else(|| self.points.get(name).map(|e| e.location.as_str()))
    }
}
