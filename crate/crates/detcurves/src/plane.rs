use std::collections::BTreeMap;

use exactnum::linalg;
use exactnum::poly::monomials_of_degree;
use exactnum::{CycloNum, MultiPoly, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{var, CurveError, Result};

fn xyz() -> [usize; 3] {
    [var("x"), var("y"), var("z")]
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(p as i128) as u64)
}

/// Reduction of a rational with denominator prime to p.
fn rat_mod(q: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64()?;
    let d = q.denom().mod_floor(&pb).to_u64()?;
    Some(n * inv_mod(d, p)? % p)
}

struct ModPoly {
    p: u64,
    terms: Vec<([u32; 3], u64)>,
}

impl ModPoly {
    fn new(f: &MultiPoly, p: u64) -> Result<Self> {
        let vs = xyz();
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            if m.iter().enumerate().any(|(k, e)| *e > 0 && !vs.contains(&k)) {
                return Err(CurveError::Shape(format!("{f} is not a form in x, y, z")));
            }
            let q = c.to_rat().ok_or_else(|| CurveError::NotIntegral(c.to_string()))?;
            let r = rat_mod(&q, p).ok_or_else(|| CurveError::NotIntegral(c.to_string()))?;
            if r != 0 {
                terms.push(([m[vs[0]] as u32, m[vs[1]] as u32, m[vs[2]] as u32], r));
            }
        }
        if terms.is_empty() {
            return Err(CurveError::PrimeDividesAll(p));
        }
        Ok(ModPoly { p, terms })
    }

    fn eval(&self, pt: [u64; 3]) -> u64 {
        let p = self.p;
        let pow = |b: u64, e: u32| (0..e).fold(1u64, |acc, _| acc * b % p);
        self.terms.iter().fold(0, |acc, (e, c)| (acc + c * pow(pt[0], e[0]) % p * pow(pt[1], e[1]) % p * pow(pt[2], e[2])) % p)
    }
}

/// Number of points of {f = 0} in the projective plane over the p-element field, enumerating
/// representatives with first nonzero coordinate 1.
pub fn finite_field_points(f: &MultiPoly, p: u64) -> Result<u64> {
    let g = ModPoly::new(f, p)?;
    let mut n = 0;
    for b in 0..p {
        for c in 0..p {
            n += (g.eval([1, b, c]) == 0) as u64;
        }
    }
    for c in 0..p {
        n += (g.eval([0, 1, c]) == 0) as u64;
    }
    n += (g.eval([0, 0, 1]) == 0) as u64;
    Ok(n)
}

/// The same count through the affine chart z = 1, then the line at infinity.
pub fn finite_field_points_by_charts(f: &MultiPoly, p: u64) -> Result<u64> {
    let g = ModPoly::new(f, p)?;
    let mut n = 0;
    for y in 0..p {
        for x in 0..p {
            n += (g.eval([x, y, 1]) == 0) as u64;
        }
    }
    for x in 0..p {
        n += (g.eval([x, 1, 0]) == 0) as u64;
    }
    n += (g.eval([1, 0, 0]) == 0) as u64;
    Ok(n)
}

/// A local parametrization P + t·v + s(t)·w of the curve at a smooth point, correct modulo tᴺ.
fn branch(curve: &MultiPoly, pt: &[CycloNum; 3], n: u32) -> Result<[MultiPoly; 3]> {
    let vs = xyz();
    let t = MultiPoly::var(var("t"));
    let at = |f: &MultiPoly| f.eval_point(&vs, pt).to_constant().unwrap_or_default();
    let shown = || format!("[{} : {} : {}]", pt[0], pt[1], pt[2]);
    if !at(curve).is_zero() {
        return Err(CurveError::NotOnCurve(shown()));
    }
    let grad: Vec<CycloNum> = vs.iter().map(|&v| at(&curve.derivative(v))).collect();
    if grad.iter().all(CycloNum::is_zero) {
        return Err(CurveError::SingularPoint(shown()));
    }
    // tangent direction independent of P, and a transversal w with ∇F(P)·w ≠ 0
    let tangent = linalg::nullspace(std::slice::from_ref(&grad), 3);
    let v = tangent
        .into_iter()
        .find(|v| linalg::rank(&[pt.to_vec(), v.clone()]) == 2)
        .expect("tangent plane has dimension 2");
    let k = grad.iter().position(|c| !c.is_zero()).unwrap();
    let c = grad[k].clone();
    let mut gamma: [MultiPoly; 3] =
        std::array::from_fn(|i| &MultiPoly::constant(pt[i].clone()) + &t.scale(&v[i]));
    let bind = |g: &[MultiPoly; 3]| -> BTreeMap<usize, MultiPoly> { vs.iter().copied().zip(g.iter().cloned()).collect() };
    for j in 2..n {
        let val = curve.subst(&bind(&gamma)).coefficient_of(var("t"), j as u16);
        let sj = -(val.to_constant().unwrap_or_default().checked_div(&c)?);
        gamma[k] = &gamma[k] + &t.pow(j).scale(&sj);
    }
    Ok(gamma)
}

/// Basis of the degree-d forms in x, y, z meeting the curve with at least the given contact order
/// at each given smooth point.
pub fn linear_system_with_conditions(
    d: u32,
    curve: &MultiPoly,
    conditions: &[([CycloNum; 3], u32)],
) -> Result<Vec<MultiPoly>> {
    let vs = xyz();
    let monos = monomials_of_degree(&vs, d);
    let mut rows: Vec<Vec<CycloNum>> = Vec::new();
    for (pt, order) in conditions {
        if *order == 0 {
            continue;
        }
        let gamma = branch(curve, pt, *order)?;
        let bind: BTreeMap<usize, MultiPoly> = vs.iter().copied().zip(gamma.iter().cloned()).collect();
        let images: Vec<MultiPoly> =
            monos.iter().map(|m| MultiPoly::monomial(*m, CycloNum::one()).subst(&bind)).collect();
        for j in 0..*order {
            rows.push(
                images
                    .iter()
                    .map(|g| g.coefficient_of(var("t"), j as u16).to_constant().unwrap_or_default())
                    .collect(),
            );
        }
    }
    let basis = if rows.is_empty() {
        (0..monos.len())
            .map(|k| (0..monos.len()).map(|j| CycloNum::from_int((j == k) as i64)).collect())
            .collect()
    } else {
        linalg::nullspace(&rows, monos.len())
    };
    Ok(basis.iter().map(|v| MultiPoly::from_coeff_vector(&monos, v)).collect())
}
