use std::fmt;

use exactnum::linalg;
use exactnum::rat::rat_root;
use exactnum::CycloNum;

use crate::group::MatrixGroup;
use crate::proj::{raw_mul, Mat4, ProjMatrix, ProjPoint, Vec4};
use crate::{GroupError, Result};

/// A linear subspace of the underlying vector space, i.e. a projective linear subspace of P³.
/// The basis is kept in reduced row echelon form, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<Vec4>,
}

fn echelon(rows: Vec<Vec<CycloNum>>) -> Vec<Vec4> {
    let mut m = rows;
    let pivots = linalg::rref(&mut m);
    m.truncate(pivots.len());
    m.into_iter().map(|r| std::array::from_fn(|k| r[k].clone())).collect()
}

impl Subspace {
    pub fn span(vectors: &[Vec4]) -> Self {
        Subspace { basis: echelon(vectors.iter().map(|v| v.to_vec()).collect()) }
    }

    pub fn whole() -> Self {
        let e = |k: usize| std::array::from_fn(|j| CycloNum::from_int((j == k) as i64));
        Self::span(&[e(0), e(1), e(2), e(3)])
    }

    /// The subspace cut out by linear forms, each given by its coefficient vector.
    pub fn from_equations(forms: &[Vec4]) -> Self {
        let rows: Vec<Vec<CycloNum>> = forms.iter().map(|f| f.to_vec()).collect();
        let ns = linalg::nullspace(&rows, 4);
        Subspace { basis: echelon(ns) }
    }

    pub fn basis(&self) -> &[Vec4] {
        &self.basis
    }

    /// Projective dimension (−1 for the empty set).
    pub fn dim(&self) -> i32 {
        self.basis.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The point, when the subspace is zero-dimensional.
    pub fn point(&self) -> Option<ProjPoint> {
        match self.basis.as_slice() {
            [v] => ProjPoint::new(v.clone()).ok(),
            _ => None,
        }
    }

    /// Coefficient vectors of linear forms cutting out the subspace, in echelon form.
    pub fn equations(&self) -> Vec<Vec4> {
        let rows: Vec<Vec<CycloNum>> = self.basis.iter().map(|v| v.to_vec()).collect();
        echelon(linalg::nullspace(&rows, 4))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut rows: Vec<Vec<CycloNum>> = self.basis.iter().map(|v| v.to_vec()).collect();
        rows.push(p.coords().to_vec());
        linalg::rank(&rows) == self.basis.len()
    }

    pub fn intersect(&self, o: &Self) -> Self {
        if self.is_empty() || o.is_empty() {
            return Subspace { basis: Vec::new() };
        }
        // columns u₁..u_a, −w₁..−w_b; a kernel vector gives Σαᵢuᵢ in both spans
        let a = self.basis.len();
        let cols: Vec<Vec4> = self.basis.iter().cloned().chain(o.basis.iter().map(|w| w.clone().map(|c| -c))).collect();
        let m: Vec<Vec<CycloNum>> = (0..4).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let vecs: Vec<Vec<CycloNum>> = linalg::nullspace(&m, cols.len())
            .into_iter()
            .map(|k| {
                (0..4)
                    .map(|r| (0..a).fold(CycloNum::zero(), |acc, i| acc + &(&k[i] * &self.basis[i][r])))
                    .collect()
            })
            .collect();
        Subspace { basis: echelon(vecs) }
    }
}

fn form_to_string(f: &Vec4) -> String {
    let mut out = String::new();
    for (k, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() { format!("x{k}") } else { format!("({c})*x{k}") };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.point() {
            return write!(f, "{p}");
        }
        let eqs: Vec<String> = self.equations().iter().map(form_to_string).collect();
        if eqs.is_empty() {
            f.write_str("P3")
        } else {
            write!(f, "{{{} = 0}}", eqs.join(" = "))
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// ρ with ρⁿ = c, searched among q·√s·ζʲ.
fn nth_root(c: &CycloNum, n: u32) -> Option<CycloNum> {
    let sqrt = [CycloNum::one(), CycloNum::r2(), CycloNum::r3(), CycloNum::r2() * CycloNum::r3()];
    for s in &sqrt {
        for j in 0..24 {
            let base = s * &CycloNum::zeta_pow(j);
            let Ok(rest) = c.checked_div(&base.pow(n)) else { continue };
            let Some(q) = rest.to_rat() else { continue };
            if let Some(r) = rat_root(&q, n) {
                return Some(base.scale(&r));
            }
        }
    }
    None
}

/// Eigenspaces of g: the fixed locus of the cyclic group it generates.
pub fn eigenspaces(g: &ProjMatrix) -> Result<Vec<Subspace>> {
    let n = g.order();
    let no_split = || GroupError::NoSplit(g.to_string());
    if 24 % n != 0 {
        return Err(no_split());
    }
    let m = g.entries();
    let mut acc: Mat4 = m.clone();
    for _ in 1..n {
        acc = raw_mul(&acc, m);
    }
    let c = acc[0][0].clone();
    let rho = nth_root(&c, n).ok_or_else(no_split)?;
    let mut out = Vec::new();
    for k in 0..n {
        let lambda = &rho * &CycloNum::zeta_pow((24 / n * k) as i64);
        let rows: Vec<Vec<CycloNum>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { &m[i][j] - &lambda } else { m[i][j].clone() }).collect())
            .collect();
        let ns = linalg::nullspace(&rows, 4);
        if !ns.is_empty() {
            out.push(Subspace { basis: echelon(ns) });
        }
    }
    if out.iter().map(|s| s.basis.len()).sum::<usize>() != 4 {
        return Err(no_split());
    }
    out.sort();
    Ok(out)
}

/// Points of P³ fixed by every element of the group, as a list of disjoint linear components.
pub fn fixed_locus(group: &MatrixGroup) -> Result<Vec<Subspace>> {
    let mut comps = vec![Subspace::whole()];
    for g in group.generators() {
        let eig = eigenspaces(g)?;
        let mut next = Vec::new();
        for c in &comps {
            for e in &eig {
                let x = c.intersect(e);
                if !x.is_empty() && !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        comps = next;
    }
    comps.sort();
    Ok(comps)
}
