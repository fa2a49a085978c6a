use exactnum::{int, rat, MultiPoly, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn2;
use crate::surface::{format_terms, DivisorClass, SymClass};
use crate::zariski::Curve;
use crate::LatticeError;

/// Rank-2 lattice with a symmetric trilinear form, plus the two extremal curve classes
/// (fibres of the exceptional divisors) given as covectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreefoldLattice {
    pub name: String,
    pub basis: Vec<String>,
    /// [H³, H²E, HE², E³]
    #[serde(with = "exactnum::serde_str::rat_vec")]
    pub cubic: Vec<Rat>,
    /// Curves with their pairings against the basis divisors.
    pub curves: Vec<Named>,
    /// Divisorial generators of the pseudo-effective cone, dual to the curves in order.
    pub pseff: Vec<Named>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Named {
    pub name: String,
    #[serde(with = "exactnum::serde_str::rat_vec")]
    pub v: Vec<Rat>,
}

fn named(name: &str, a: i64, b: i64) -> Named {
    Named { name: name.into(), v: vec![int(a), int(b)] }
}

impl ThreefoldLattice {
    /// Basis (H, E) with H³=1, H²E=0, HE²=−6, E³=−28; curves f (E→C₆ fibre), f′ (E′ fibre).
    pub fn standard() -> Self {
        Self::with_names("X", "H", "E", "f", "f'", "E'")
    }

    /// The same data read in the basis (H′, E′); the link swaps the two descriptions.
    pub fn swapped() -> Self {
        Self::with_names("X'", "H'", "E'", "f'", "f", "E")
    }

    fn with_names(name: &str, h: &str, e: &str, f: &str, f2: &str, e2: &str) -> Self {
        let lat = ThreefoldLattice {
            name: name.into(),
            basis: vec![h.into(), e.into()],
            cubic: vec![int(1), int(0), int(-6), int(-28)],
            curves: vec![named(f, 0, -1), named(f2, 1, 3)],
            pseff: vec![named(e, 0, 1), named(e2, 8, -3)],
        };
        lat.validate().expect("standard lattice data");
        lat
    }

    /// Checks the identities the rest of the toolkit relies on.
    pub fn validate(&self) -> Result<(), LatticeError> {
        let hp = self.h_prime();
        let ep = self.e_prime();
        let k = self.anticanonical();
        let checks = [
            ("H'^3 = 1", self.cube(&hp), int(1)),
            ("E'^3 = -28", self.cube(&ep), int(-28)),
            ("(-K)^3 = 20", self.cube(&k), int(20)),
            ("H'.f' = 0", self.curve_pairing(1, &hp), int(0)),
            ("E'.f' = -1", self.curve_pairing(1, &ep), int(-1)),
            ("E.f = -1", self.curve_pairing(0, &self.class(1)), int(-1)),
            ("H'^2 H = 3", self.triple(&hp, &hp, &self.class(0)), int(3)),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(LatticeError::Invalid(format!("{}: {what} fails", self.name)));
            }
        }
        Ok(())
    }

    pub fn class(&self, i: usize) -> Vec<Rat> {
        let mut c = vec![Rat::zero(); 2];
        c[i] = int(1);
        c
    }

    pub fn h_prime(&self) -> Vec<Rat> {
        vec![int(3), int(-1)]
    }

    pub fn e_prime(&self) -> Vec<Rat> {
        vec![int(8), int(-3)]
    }

    /// −K = 4H − E
    pub fn anticanonical(&self) -> Vec<Rat> {
        vec![int(4), int(-1)]
    }

    /// Class by name: basis elements, their primed partners, or `-K`.
    pub fn named(&self, name: &str) -> Result<Vec<Rat>, LatticeError> {
        let (h, e) = (&self.basis[0], &self.basis[1]);
        let other = |s: &str| s.strip_suffix('\'').map(str::to_string).unwrap_or_else(|| format!("{s}'"));
        match name {
            "-K" => Ok(self.anticanonical()),
            n if n == h => Ok(self.class(0)),
            n if n == e => Ok(self.class(1)),
            n if n == other(h) => Ok(self.h_prime()),
            n if n == other(e) => Ok(self.e_prime()),
            _ => Err(LatticeError::UnknownBasis(name.into())),
        }
    }

    fn t(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.cubic[i + j + k]
    }

    pub fn triple(&self, a: &[Rat], b: &[Rat], c: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    s += &a[i] * &b[j] * &c[k] * self.t(i, j, k);
                }
            }
        }
        s
    }

    pub fn cube(&self, a: &[Rat]) -> Rat {
        self.triple(a, a, a)
    }

    /// D·curve for the i-th curve.
    pub fn curve_pairing(&self, i: usize, d: &[Rat]) -> Rat {
        self.curves[i].v.iter().zip(d).map(|(x, y)| x * y).sum()
    }

    fn check(&self, d: &SymClass) -> Result<(), LatticeError> {
        if d.lattice != self.name || d.coeffs.len() != 2 {
            return Err(LatticeError::Mismatch(format!("class on {}, lattice is {}", d.lattice, self.name)));
        }
        Ok(())
    }

    /// D1·D2·D3 by trilinear expansion.
    pub fn triple_product(&self, a: &SymClass, b: &SymClass, c: &SymClass) -> Result<MultiPoly, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        let mut s = MultiPoly::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let t = self.t(i, j, k);
                    if t.is_zero() {
                        continue;
                    }
                    let m = &(&a.coeffs[i] * &b.coeffs[j]) * &c.coeffs[k];
                    s = &s + &m.scale_rat(t);
                }
            }
        }
        Ok(s)
    }

    /// Curves for the Zariski engine: subtracting E is governed by f, subtracting E′ by f′.
    pub fn zariski_curves(&self) -> Vec<Curve> {
        self.pseff
            .iter()
            .zip(&self.curves)
            .map(|(d, c)| Curve::new(&d.name, d.v.clone(), c.v.clone()))
            .collect()
    }

    /// Coefficients (α, β) with D = α·E + β·E′.
    pub fn in_pseff_basis(&self, d: &DivisorClass) -> (AffineFn2, AffineFn2) {
        let beta = d.coeffs[0].scale(&rat(1, 8));
        let alpha = &d.coeffs[1] + &d.coeffs[0].scale(&rat(3, 8));
        (alpha, beta)
    }

    /// −K − u·S for a constant class S.
    pub fn family_minus_u(&self, s: &[Rat]) -> DivisorClass {
        let k = self.anticanonical();
        DivisorClass::new(
            &self.name,
            k.iter().zip(s).map(|(a, b)| AffineFn2::in_u(a.clone(), -b.clone())).collect(),
        )
    }

    pub fn format(&self, d: &DivisorClass) -> String {
        d.format(&self.basis)
    }

    pub fn format_rat(&self, c: &[Rat]) -> String {
        format_terms(&self.basis, c.iter().map(|q| (q.is_zero(), exactnum::fmt_rat(q))))
    }
}
