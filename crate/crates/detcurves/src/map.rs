use std::collections::BTreeMap;

use exactnum::MultiPoly;
use serde::{Deserialize, Serialize};

use crate::{xvars, CurveError, Result};

/// [x0 : x1 : x2 : x3] ↦ [h0 : h1 : h2 : h3] with the hᵢ homogeneous of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMap {
    #[serde(with = "exactnum::serde_str::poly_vec")]
    pub comps: Vec<MultiPoly>,
}

impl RationalMap {
    pub fn new(comps: Vec<MultiPoly>) -> Result<Self> {
        let xs = xvars();
        if comps.len() != 4 {
            return Err(CurveError::Shape(format!("a map of P3 has 4 components, got {}", comps.len())));
        }
        if comps.iter().all(MultiPoly::is_zero) {
            return Err(CurveError::Degenerate("all components vanish".into()));
        }
        let d = comps.iter().find(|c| !c.is_zero()).unwrap().degree_in_vars(&xs);
        if let Some(c) = comps.iter().find(|c| !c.is_zero() && !c.is_homogeneous_in(&xs, d)) {
            return Err(CurveError::Inhomogeneous(c.to_string()));
        }
        Ok(RationalMap { comps })
    }

    pub fn parse(comps: &[&str]) -> Result<Self> {
        Self::new(comps.iter().map(|s| s.parse()).collect::<std::result::Result<Vec<MultiPoly>, _>>()?)
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(|c| c.degree_in_vars(&xvars())).max().unwrap_or(0)
    }

    /// self ∘ other: hᵢ(g(x)).
    pub fn compose(&self, other: &RationalMap) -> Vec<MultiPoly> {
        let bind: BTreeMap<usize, MultiPoly> = xvars().into_iter().zip(other.comps.iter().cloned()).collect();
        self.comps.iter().map(|h| h.subst(&bind)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub identity: bool,
    /// The common factor q with hᵢ(h(x)) = q·xᵢ, when the composition is the identity.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_poly")]
    pub factor: Option<MultiPoly>,
}

mod opt_poly {
    use exactnum::MultiPoly;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &Option<MultiPoly>, s: S) -> Result<S::Ok, S::Error> {
        p.as_ref().map(|p| p.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<MultiPoly>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// Whether φ∘φ is the identity as a rational map: φᵢ(φ(x)) = q(x)·xᵢ for one common q.
pub fn map_self_compose(phi: &RationalMap) -> Result<Composition> {
    let comp = phi.compose(phi);
    if comp.iter().all(MultiPoly::is_zero) {
        return Err(CurveError::Degenerate("the self-composition vanishes identically".into()));
    }
    let xs = xvars();
    let mut unit = [0u16; exactnum::NV];
    unit[xs[0]] = 1;
    let Some(q) = comp[0].div_monomial(&unit) else {
        return Ok(Composition { identity: false, factor: None });
    };
    let identity = !q.is_zero() && (0..4).all(|i| comp[i] == &q * &MultiPoly::var(xs[i]));
    Ok(Composition { identity, factor: identity.then_some(q) })
}
