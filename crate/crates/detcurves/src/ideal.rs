use std::collections::BTreeMap;

use exactnum::linalg;
use exactnum::poly::monomials_of_degree;
use exactnum::{CycloNum, MultiPoly};
use groups::{MatrixGroup, ProjMatrix, ProjPoint};
use serde::{Deserialize, Serialize};

use crate::{xvars, CurveError, Result};

/// Homogeneous generators in a fixed set of variables. Spans and memberships are decided degree by
/// degree on monomial coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomIdeal {
    #[serde(with = "exactnum::serde_str::poly_vec")]
    pub gens: Vec<MultiPoly>,
    pub vars: Vec<usize>,
}

pub type PolyPoint = [MultiPoly; 4];

fn check_homogeneous(f: &MultiPoly, vars: &[usize]) -> Result<u32> {
    let d = f.degree_in_vars(vars);
    if f.is_zero() || f.is_homogeneous_in(vars, d) {
        Ok(d)
    } else {
        Err(CurveError::Inhomogeneous(f.to_string()))
    }
}

impl HomIdeal {
    pub fn new(gens: Vec<MultiPoly>, vars: Vec<usize>) -> Result<Self> {
        for g in &gens {
            check_homogeneous(g, &vars)?;
        }
        Ok(HomIdeal { gens, vars })
    }

    /// Generators in x0..x3.
    pub fn in_x(gens: Vec<MultiPoly>) -> Result<Self> {
        Self::new(gens, xvars())
    }

    pub(crate) fn new_unchecked(gens: Vec<MultiPoly>, vars: Vec<usize>) -> Self {
        HomIdeal { gens, vars }
    }

    pub fn parse(gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| s.parse()).collect::<std::result::Result<Vec<MultiPoly>, _>>()?;
        Self::in_x(polys)
    }

    /// Common degree of the nonzero generators, if there is one.
    pub fn degree(&self) -> Option<u32> {
        let mut ds = self.gens.iter().filter(|g| !g.is_zero()).map(|g| g.degree_in_vars(&self.vars));
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(MultiPoly::is_zero)
    }

    /// Products of generators with monomials, spanning the degree-d part of the ideal.
    pub fn graded_piece(&self, d: u32) -> Vec<MultiPoly> {
        let mut out = Vec::new();
        for g in self.gens.iter().filter(|g| !g.is_zero()) {
            let e = g.degree_in_vars(&self.vars);
            if e > d {
                continue;
            }
            for m in monomials_of_degree(&self.vars, d - e) {
                out.push(&MultiPoly::monomial(m, CycloNum::one()) * g);
            }
        }
        out
    }

    fn rows(&self, polys: &[MultiPoly], d: u32) -> Result<Vec<Vec<CycloNum>>> {
        let monos = monomials_of_degree(&self.vars, d);
        polys.iter().map(|p| p.coeff_vector(&monos).map_err(CurveError::from)).collect()
    }

    fn in_span_of(&self, f: &MultiPoly, span: &[MultiPoly], d: u32) -> Result<bool> {
        let mut rows = self.rows(span, d)?;
        let r = linalg::rank(&rows);
        rows.push(self.rows(std::slice::from_ref(f), d)?.remove(0));
        Ok(linalg::rank(&rows) == r)
    }

    /// Whether f is a linear combination of the generators of its own degree.
    pub fn span_contains(&self, f: &MultiPoly) -> Result<bool> {
        let d = check_homogeneous(f, &self.vars)?;
        if f.is_zero() {
            return Ok(true);
        }
        let same: Vec<MultiPoly> =
            self.gens.iter().filter(|g| !g.is_zero() && g.degree_in_vars(&self.vars) == d).cloned().collect();
        self.in_span_of(f, &same, d)
    }

    /// Membership of a homogeneous f in the ideal generated, tested in degree deg f.
    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        let d = check_homogeneous(f, &self.vars)?;
        if f.is_zero() {
            return Ok(true);
        }
        self.in_span_of(f, &self.graded_piece(d), d)
    }

    /// Dimension of the span of the generators (all of one degree).
    pub fn span_rank(&self) -> Result<usize> {
        let d = self.degree().ok_or_else(|| CurveError::Inhomogeneous("generators of mixed degree".into()))?;
        Ok(linalg::rank(&self.rows(&self.gens, d)?))
    }

    /// Equality of the spans of two generator lists of the same degree.
    pub fn span_equals(&self, o: &HomIdeal) -> Result<bool> {
        Ok(self.gens.iter().map(|g| o.span_contains(g)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b)
            && o.gens.iter().map(|g| self.span_contains(g)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b))
    }

    /// Generators pulled back along x ↦ g·x.
    pub fn transform(&self, g: &ProjMatrix) -> HomIdeal {
        let xs = xvars();
        let m = g.entries();
        let bind: BTreeMap<usize, MultiPoly> = (0..4)
            .map(|i| {
                let row = (0..4).fold(MultiPoly::zero(), |acc, j| &acc + &MultiPoly::var(xs[j]).scale(&m[i][j]));
                (xs[i], row)
            })
            .collect();
        HomIdeal { gens: self.gens.iter().map(|f| f.subst(&bind)).collect(), vars: self.vars.clone() }
    }

    /// Whether every transformed generator lies in the span of the generators.
    pub fn is_invariant(&self, g: &ProjMatrix) -> Result<bool> {
        for f in &self.transform(g).gens {
            if !self.span_contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every generator vanishes at the point (coordinates may carry parameters).
    pub fn vanishes_at(&self, p: &PolyPoint) -> bool {
        let bind: BTreeMap<usize, MultiPoly> = xvars().into_iter().zip(p.iter().cloned()).collect();
        self.gens.iter().all(|f| f.subst(&bind).is_zero())
    }

    /// The generators with variables bound to constants (e.g. a parameter specialized).
    pub fn specialize(&self, vals: &BTreeMap<usize, CycloNum>) -> HomIdeal {
        HomIdeal { gens: self.gens.iter().map(|f| f.eval(vals)).collect(), vars: self.vars.clone() }
    }
}

pub fn poly_point(p: &ProjPoint) -> PolyPoint {
    p.coords().clone().map(MultiPoly::constant)
}

fn projectively_equal(p: &PolyPoint, q: &PolyPoint) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| &p[i] * &q[j] == &p[j] * &q[i]))
}

/// Images of a point with polynomial coordinates under every element of the group, with
/// projective duplicates removed.
pub fn symbolic_orbit(group: &MatrixGroup, p: &PolyPoint) -> Vec<PolyPoint> {
    let mut out: Vec<PolyPoint> = Vec::new();
    for g in group.elements() {
        let m = g.entries();
        let q: PolyPoint =
            std::array::from_fn(|i| (0..4).fold(MultiPoly::zero(), |acc, j| &acc + &p[j].scale(&m[i][j])));
        if !out.iter().any(|r| projectively_equal(r, &q)) {
            out.push(q);
        }
    }
    out
}

/// Whether every generator vanishes at every point.
pub fn orbit_vanishing(points: &[PolyPoint], ideal: &HomIdeal) -> bool {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().all(|p| ideal.vanishes_at(p))
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().all(|p| ideal.vanishes_at(p))
    }
}

/// Remainder of f modulo vᵏ − c, i.e. every vᵉ rewritten as c^(e div k)·v^(e mod k).
pub fn reduce_power(f: &MultiPoly, v: usize, k: u16, c: &CycloNum) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, coef) in f.terms() {
        let mut r = *m;
        r[v] = m[v] % k;
        out.add_term(r, coef.clone() * c.pow((m[v] / k) as u32));
    }
    out
}
