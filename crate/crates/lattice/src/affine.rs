use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use exactnum::{fmt_rat, var_index, MultiPoly, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// c0 + cu·u + cv·v
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AffineFn2 {
    #[serde(with = "exactnum::serde_str::rat")]
    pub c0: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub cu: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub cv: Rat,
}

impl AffineFn2 {
    pub fn new(c0: Rat, cu: Rat, cv: Rat) -> Self {
        AffineFn2 { c0, cu, cv }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(c, Rat::zero(), Rat::zero())
    }

    /// c0 + cu·u
    pub fn in_u(c0: Rat, cu: Rat) -> Self {
        Self::new(c0, cu, Rat::zero())
    }

    pub fn u() -> Self {
        Self::in_u(Rat::zero(), Rat::one())
    }

    pub fn v() -> Self {
        Self::new(Rat::zero(), Rat::zero(), Rat::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cu.is_zero() && self.cv.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.cu.is_zero() && self.cv.is_zero()
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        &self.c0 + &self.cu * u + &self.cv * v
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Self::new(&self.c0 * q, &self.cu * q, &self.cv * q)
    }

    /// Substitute v = w(u), w free of v.
    pub fn at_v(&self, w: &AffineFn2) -> AffineFn2 {
        debug_assert!(w.cv.is_zero());
        Self::in_u(&self.c0 + &self.cv * &w.c0, &self.cu + &self.cv * &w.cu)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let u = MultiPoly::var(var_index("u").unwrap());
        let v = MultiPoly::var(var_index("v").unwrap());
        MultiPoly::from_rat(&self.c0) + u.scale_rat(&self.cu) + v.scale_rat(&self.cv)
    }
}

impl Add for &AffineFn2 {
    type Output = AffineFn2;
    fn add(self, o: &AffineFn2) -> AffineFn2 {
        AffineFn2::new(&self.c0 + &o.c0, &self.cu + &o.cu, &self.cv + &o.cv)
    }
}

impl Sub for &AffineFn2 {
    type Output = AffineFn2;
    fn sub(self, o: &AffineFn2) -> AffineFn2 {
        AffineFn2::new(&self.c0 - &o.c0, &self.cu - &o.cu, &self.cv - &o.cv)
    }
}

impl Neg for &AffineFn2 {
    type Output = AffineFn2;
    fn neg(self) -> AffineFn2 {
        AffineFn2::new(-&self.c0, -&self.cu, -&self.cv)
    }
}

impl Mul<&Rat> for &AffineFn2 {
    type Output = AffineFn2;
    fn mul(self, q: &Rat) -> AffineFn2 {
        self.scale(q)
    }
}

impl fmt::Display for AffineFn2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (c, name) in [(&self.cu, "u"), (&self.cv, "v")] {
            if c.is_zero() {
                continue;
            }
            let body = if c.is_one() {
                name.to_string()
            } else if *c == -Rat::one() {
                format!("-{name}")
            } else {
                format!("{}*{name}", fmt_rat(c))
            };
            parts.push(body);
        }
        if !self.c0.is_zero() || parts.is_empty() {
            parts.push(fmt_rat(&self.c0));
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for AffineFn2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<&MultiPoly> for AffineFn2 {
    type Error = crate::LatticeError;

    /// Accepts polynomials of degree at most 1 in u, v with rational coefficients.
    fn try_from(p: &MultiPoly) -> Result<Self, Self::Error> {
        let u = var_index("u").unwrap();
        let v = var_index("v").unwrap();
        let bad = || crate::LatticeError::NotAffine(p.to_string());
        if p.vars_used().iter().any(|x| *x != u && *x != v) || p.total_degree() > 1 {
            return Err(bad());
        }
        let zero = MultiPoly::zero();
        let c0 = p.subst(&[(u, zero.clone()), (v, zero.clone())].into_iter().collect());
        let cu = p.coefficient_of(u, 1);
        let cv = p.coefficient_of(v, 1);
        let r = |q: &MultiPoly| q.to_rat().ok_or_else(bad);
        Ok(AffineFn2::new(r(&c0)?, r(&cu)?, r(&cv)?))
    }
}
