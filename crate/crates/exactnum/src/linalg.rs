//! Dense Gaussian elimination over an exact field.

use num_traits::{One, Zero};

use crate::cyclo::CycloNum;
use crate::rat::Rat;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn finv(&self) -> Option<Self>;
}

impl Field for Rat {
    fn fzero() -> Self {
        Rat::zero()
    }
    fn fone() -> Self {
        Rat::one()
    }
    fn fis_zero(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn finv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Field for CycloNum {
    fn fzero() -> Self {
        CycloNum::zero()
    }
    fn fone() -> Self {
        CycloNum::one()
    }
    fn fis_zero(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn finv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].fis_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].finv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.fis_zero() {
                *x = x.fmul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].fis_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.fis_zero() {
                    *x = x.fsub(&f.fmul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0}.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::fzero(); cols];
            v[f] = F::fone();
            for (r, &p) in pivots.iter().enumerate() {
                let x = &a[r][f];
                if !x.fis_zero() {
                    v[p] = F::fzero().fsub(x);
                }
            }
            v
        })
        .collect()
}

/// Some solution of a x = b, if one exists.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::fzero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(m: &mut [Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::fone() } else { F::fzero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = F::fone();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].fis_zero()) else {
            return F::fzero();
        };
        if p != c {
            a.swap(p, c);
            d = F::fzero().fsub(&d);
        }
        d = d.fmul(&a[c][c]);
        let inv = a[c][c].finv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].fis_zero() {
                continue;
            }
            let f = a[i][c].fmul(&inv);
            for j in c..n {
                let t = f.fmul(&a[c][j]);
                a[i][j] = a[i][j].fsub(&t);
            }
        }
    }
    d
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = F::fzero();
                    for k in 0..inner {
                        if !row[k].fis_zero() && !b[k][j].fis_zero() {
                            s = s.fadd(&row[k].fmul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Whether the symmetric part of `m` is negative definite (leading principal minors alternate).
pub fn is_negative_definite(m: &[Vec<Rat>]) -> bool {
    let n = m.len();
    let sym: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| -(&m[i][j] + &m[j][i]) / Rat::from_integer(2.into())).collect())
        .collect();
    (1..=n).all(|k| {
        let minor: Vec<Vec<Rat>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor) > Rat::zero()
    })
}
