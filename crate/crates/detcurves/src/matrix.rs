use std::collections::BTreeMap;
use std::fmt;

use exactnum::{CycloNum, MultiPoly};
use serde::{Deserialize, Serialize};

use crate::ideal::HomIdeal;
use crate::{var, xvars, CurveError, Result};

/// A matrix whose entries are linear forms (or zero) in a fixed set of variables. Entries may
/// carry parameters such as `a` in their coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormMatrix {
    #[serde(with = "exactnum::serde_str::poly_mat")]
    pub rows: Vec<Vec<MultiPoly>>,
    pub vars: Vec<usize>,
}

impl LinearFormMatrix {
    pub fn new(rows: Vec<Vec<MultiPoly>>, vars: Vec<usize>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CurveError::Shape("ragged rows".into()));
        }
        for e in rows.iter().flatten() {
            if !e.is_zero() && !e.is_homogeneous_in(&vars, 1) {
                return Err(CurveError::Inhomogeneous(format!("entry {e} is not a linear form")));
            }
        }
        Ok(LinearFormMatrix { rows, vars })
    }

    /// The matrix with entries L_ij = Σ_k x_k (M_i)_kj, one row per bilinear form xᵀ·M_i·y.
    pub fn from_forms(mats: &[Vec<Vec<MultiPoly>>]) -> Result<Self> {
        let xs = xvars();
        let rows = mats
            .iter()
            .map(|m| {
                (0..4)
                    .map(|j| {
                        (0..4).fold(MultiPoly::zero(), |acc, k| &acc + &(&MultiPoly::var(xs[k]) * &m[k][j]))
                    })
                    .collect()
            })
            .collect();
        Self::new(rows, xs)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul(&self, t: &[Vec<CycloNum>]) -> Self {
        let rows = t
            .iter()
            .map(|trow| {
                (0..self.shape().1)
                    .map(|j| {
                        trow.iter()
                            .zip(&self.rows)
                            .fold(MultiPoly::zero(), |acc, (c, r)| &acc + &r[j].scale(c))
                    })
                    .collect()
            })
            .collect();
        LinearFormMatrix { rows, vars: self.vars.clone() }
    }
}

/// Coefficient matrix M of a bilinear form Σ M_kj x_k y_j.
pub fn bilinear_matrix(form: &MultiPoly) -> Result<Vec<Vec<MultiPoly>>> {
    let (xs, ys) = (xvars(), crate::yvars());
    let mut m = vec![vec![MultiPoly::zero(); 4]; 4];
    for (mono, c) in form.terms() {
        let xk: Vec<usize> = (0..4).filter(|&k| mono[xs[k]] > 0).collect();
        let yj: Vec<usize> = (0..4).filter(|&k| mono[ys[k]] > 0).collect();
        match (xk.as_slice(), yj.as_slice()) {
            ([k], [j]) if mono[xs[*k]] == 1 && mono[ys[*j]] == 1 => {
                let mut rest = *mono;
                rest[xs[*k]] = 0;
                rest[ys[*j]] = 0;
                m[*k][*j] = &m[*k][*j] + &MultiPoly::monomial(rest, c.clone());
            }
            _ => return Err(CurveError::Inhomogeneous(format!("{form} is not bilinear in x, y"))),
        }
    }
    Ok(m)
}

/// Determinant by Laplace expansion along the first row.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut out = MultiPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let t = &m[0][j] * &poly_det(&minor);
                out = if j % 2 == 0 { &out + &t } else { &out - &t };
            }
            out
        }
    }
}

/// The determinants of the square matrices obtained by deleting one column, in column order.
pub fn maximal_minors(m: &LinearFormMatrix) -> Result<HomIdeal> {
    let (r, c) = m.shape();
    if c != r + 1 {
        return Err(CurveError::Shape(format!("expected r × (r+1), got {r} × {c}")));
    }
    let gens = (0..c)
        .map(|skip| {
            let sub: Vec<Vec<MultiPoly>> = m
                .rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, e)| e.clone()).collect())
                .collect();
            poly_det(&sub)
        })
        .collect();
    Ok(HomIdeal::new_unchecked(gens, m.vars.clone()))
}

/// A quotient of two polynomials, compared by cross-multiplication.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ratio {
    #[serde(with = "exactnum::serde_str::poly")]
    pub num: MultiPoly,
    #[serde(with = "exactnum::serde_str::poly")]
    pub den: MultiPoly,
}

impl Ratio {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        Ratio { num, den }
    }

    pub fn equals(&self, o: &Ratio) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Value after binding variables; None when the denominator vanishes there.
    pub fn eval(&self, vals: &BTreeMap<usize, CycloNum>) -> Option<CycloNum> {
        let d = self.den.eval(vals).to_constant()?;
        let n = self.num.eval(vals).to_constant()?;
        n.checked_div(&d).ok()
    }
}

impl PartialEq for Ratio {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// α(x⁴+y⁴+z⁴) + β(x²y²+x²z²+y²z²) after rescaling x, y, z; λ = β/α.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub lambda: Ratio,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    #[serde(with = "exactnum::serde_str::poly")]
    pub quartic: MultiPoly,
    pub normal_form: Option<NormalForm>,
}

/// det(x·M1 + y·M2 + z·M3) and, when it has the octahedral shape up to scaling of x, y, z, its λ.
pub fn pencil_determinant(m1: &[Vec<MultiPoly>], m2: &[Vec<MultiPoly>], m3: &[Vec<MultiPoly>]) -> Result<Pencil> {
    let n = m1.len();
    for m in [m1, m2, m3] {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(CurveError::Shape("pencil matrices must be square of one size".into()));
        }
    }
    let (x, y, z) = (MultiPoly::var(var("x")), MultiPoly::var(var("y")), MultiPoly::var(var("z")));
    let m: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| (0..n).map(|j| &(&(&x * &m1[i][j]) + &(&y * &m2[i][j])) + &(&z * &m3[i][j])).collect())
        .collect();
    let quartic = poly_det(&m);
    let normal_form = octahedral_match(&quartic);
    Ok(Pencil { quartic, normal_form })
}

/// Coefficient of xᵃyᵇzᶜ as a polynomial in the remaining variables.
fn coeff_xyz(q: &MultiPoly, e: [u16; 3]) -> MultiPoly {
    let vs = [var("x"), var("y"), var("z")];
    let mut out = MultiPoly::zero();
    for (m, c) in q.terms() {
        if (0..3).all(|k| m[vs[k]] == e[k]) {
            let mut rest = *m;
            for v in vs {
                rest[v] = 0;
            }
            out.add_term(rest, c.clone());
        }
    }
    out
}

fn octahedral_match(q: &MultiPoly) -> Option<NormalForm> {
    let vs = [var("x"), var("y"), var("z")];
    let allowed = [[4, 0, 0], [0, 4, 0], [0, 0, 4], [2, 2, 0], [2, 0, 2], [0, 2, 2]];
    if q.terms().any(|(m, _)| !allowed.iter().any(|e| (0..3).all(|k| m[vs[k]] == e[k]))) {
        return None;
    }
    let [cx, cy, cz, cxy, cxz, cyz] = allowed.map(|e| coeff_xyz(q, e));
    if cx.is_zero() || cy.is_zero() || cz.is_zero() {
        return None;
    }
    if cxy.is_zero() && cxz.is_zero() && cyz.is_zero() {
        return Some(NormalForm { lambda: Ratio::new(MultiPoly::zero(), MultiPoly::one()) });
    }
    if cxy.is_zero() || cxz.is_zero() || cyz.is_zero() {
        return None;
    }
    // λ = c_xz·c_yz / (c_z·c_xy), and λ² must equal c_xy²/(c_x c_y) and its two permutations
    let lambda = Ratio::new(&cxz * &cyz, &cz * &cxy);
    let sq = Ratio::new(&lambda.num * &lambda.num, &lambda.den * &lambda.den);
    let checks = [(&cxy, &cx, &cy), (&cxz, &cx, &cz), (&cyz, &cy, &cz)];
    if checks.iter().all(|(c, a, b)| sq.equals(&Ratio::new(*c * *c, *a * *b))) {
        Some(NormalForm { lambda })
    } else {
        None
    }
}
