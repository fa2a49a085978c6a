use std::fmt;
use std::str::FromStr;

use exactnum::linalg;
use exactnum::CycloNum;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{GroupError, Result};

pub type Vec4 = [CycloNum; 4];
pub type Mat4 = [[CycloNum; 4]; 4];

/// A point of P³ with its first nonzero coordinate scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec4);

fn scale_to_first(v: &mut [CycloNum]) -> bool {
    let Some(k) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    if !v[k].is_one() {
        let inv = v[k].inv().expect("nonzero");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
    }
    true
}

impl ProjPoint {
    pub fn new(mut coords: Vec4) -> Result<Self> {
        if !scale_to_first(&mut coords) {
            return Err(GroupError::ZeroPoint);
        }
        Ok(ProjPoint(coords))
    }

    pub fn from_strs(c: [&str; 4]) -> Result<Self> {
        let mut v: Vec4 = Default::default();
        for (x, s) in v.iter_mut().zip(c) {
            *x = s.parse()?;
        }
        Self::new(v)
    }

    pub fn coords(&self) -> &Vec4 {
        &self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[a : b : c : d]` (brackets optional).
impl FromStr for ProjPoint {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = body.split(':').collect();
        if parts.len() != 4 {
            return Err(exactnum::ExactError::Shape(format!("expected 4 coordinates in {s:?}")).into());
        }
        Self::from_strs([parts[0], parts[1], parts[2], parts[3]])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 4 {
            return Err(serde::de::Error::custom("a point has 4 coordinates"));
        }
        Self::from_strs([&v[0], &v[1], &v[2], &v[3]]).map_err(serde::de::Error::custom)
    }
}

/// An invertible 4×4 matrix up to scalars, stored with its first nonzero entry (row-major) equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMatrix(Mat4);

pub(crate) fn raw_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out: Mat4 = Default::default();
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..4 {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

fn to_rows(m: &Mat4) -> Vec<Vec<CycloNum>> {
    m.iter().map(|r| r.to_vec()).collect()
}

impl ProjMatrix {
    pub fn new(m: Mat4) -> Result<Self> {
        if linalg::det(&to_rows(&m)).is_zero() {
            return Err(GroupError::Singular);
        }
        Ok(Self::normalized(m))
    }

    fn normalized(m: Mat4) -> Self {
        let mut flat: Vec<CycloNum> = m.into_iter().flatten().collect();
        scale_to_first(&mut flat);
        let mut out: Mat4 = Default::default();
        for (k, c) in flat.into_iter().enumerate() {
            out[k / 4][k % 4] = c;
        }
        ProjMatrix(out)
    }

    pub fn identity() -> Self {
        Self::diag([1, 1, 1, 1])
    }

    pub fn diag(d: [i64; 4]) -> Self {
        let mut m: Mat4 = Default::default();
        for (k, x) in d.iter().enumerate() {
            m[k][k] = CycloNum::from_int(*x);
        }
        Self::new(m).expect("nonzero diagonal")
    }

    pub fn from_strs(rows: &[[&str; 4]; 4]) -> Result<Self> {
        let mut m: Mat4 = Default::default();
        for (r, row) in m.iter_mut().zip(rows) {
            for (x, s) in r.iter_mut().zip(row) {
                *x = s.parse()?;
            }
        }
        Self::new(m)
    }

    pub fn entries(&self) -> &Mat4 {
        &self.0
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(raw_mul(&self.0, &o.0))
    }

    pub fn inverse(&self) -> Self {
        let inv = linalg::inverse(&mut to_rows(&self.0)).expect("invertible by construction");
        let mut m: Mat4 = Default::default();
        for (r, row) in m.iter_mut().zip(inv) {
            for (x, c) in r.iter_mut().zip(row) {
                *x = c;
            }
        }
        Self::normalized(m)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// `self · h · self⁻¹`.
    pub fn conjugate(&self, h: &Self) -> Self {
        self.mul(h).mul(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply_vec(&self, v: &Vec4) -> Vec4 {
        let mut out: Vec4 = Default::default();
        for (o, row) in out.iter_mut().zip(&self.0) {
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.apply_vec(p.coords())).expect("invertible matrix maps points to points")
    }

    /// Smallest k with gᵏ scalar.
    pub fn order(&self) -> u32 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = self.0.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        if v.len() != 4 || v.iter().any(|r| r.len() != 4) {
            return Err(serde::de::Error::custom("a matrix is 4×4"));
        }
        let rows: [[&str; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| v[i][j].as_str()));
        Self::from_strs(&rows).map_err(serde::de::Error::custom)
    }
}
