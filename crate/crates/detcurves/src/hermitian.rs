//! Real forms on the Weil restriction of P3: for y = z̄, a_nm = Re(z_n z̄_m) and b_nm = Im(z_n z̄_m).

use exactnum::{CycloNum, MultiPoly};

use crate::{xvars, yvars};

fn half() -> CycloNum {
    CycloNum::from_rat(&exactnum::rat(1, 2))
}

pub fn re(w: &CycloNum) -> CycloNum {
    (w.clone() + w.conj()) * half()
}

pub fn im(w: &CycloNum) -> CycloNum {
    (w.clone() - w.conj()) * half() * -CycloNum::i()
}

/// The matrices (a_nm) and (b_nm) at a point z.
pub fn segre_forms(z: &[CycloNum; 4]) -> ([[CycloNum; 4]; 4], [[CycloNum; 4]; 4]) {
    let w = |n: usize, m: usize| z[n].clone() * z[m].conj();
    (std::array::from_fn(|n| std::array::from_fn(|m| re(&w(n, m)))), std::array::from_fn(|n| std::array::from_fn(|m| im(&w(n, m)))))
}

/// A real linear form Σ c·a_nm in the entries of the symmetric matrix (a_nm).
#[derive(Clone, Debug, PartialEq)]
pub struct RealForm {
    pub terms: Vec<(usize, usize, CycloNum)>,
}

impl RealForm {
    pub fn new(terms: &[(usize, usize, i64)]) -> Self {
        RealForm { terms: terms.iter().map(|&(n, m, c)| (n, m, CycloNum::from_int(c))).collect() }
    }

    pub fn eval_at(&self, z: &[CycloNum; 4]) -> CycloNum {
        let (a, _) = segre_forms(z);
        self.terms.iter().fold(CycloNum::zero(), |acc, (n, m, c)| acc + c.clone() * a[*n][*m].clone())
    }

    /// The bilinear form in x, y restricting to this form on y = z̄, using a_nm = (x_n y_m + x_m y_n)/2.
    pub fn pullback(&self) -> MultiPoly {
        let (xs, ys) = (xvars(), yvars());
        let xy = |n: usize, m: usize| &MultiPoly::var(xs[n]) * &MultiPoly::var(ys[m]);
        self.terms
            .iter()
            .fold(MultiPoly::zero(), |acc, (n, m, c)| &acc + &(&xy(*n, *m) + &xy(*m, *n)).scale(&(c.clone() * half())))
    }
}

/// The trace form Σ a_nn = Σ |z_n|².
pub fn trace_form() -> RealForm {
    RealForm::new(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)])
}
