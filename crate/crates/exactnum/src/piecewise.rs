use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::rat::{fmt_rat, Rat};
use crate::ExactError;

/// Dense univariate polynomial over Q, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn constant(q: Rat) -> Self {
        Self::new(vec![q])
    }

    /// a + b·t
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for x in self.c.iter().rev() {
            acc = acc * t + x;
        }
        acc
    }

    pub fn antiderivative(&self) -> Self {
        let mut c = vec![Rat::zero()];
        for (k, x) in self.c.iter().enumerate() {
            c.push(x / Rat::from_integer((k as i64 + 1).into()));
        }
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * Rat::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Rat {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Self::new(self.c.iter().map(|x| x * q).collect())
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Self, ExactError> {
        let mut out = UPoly::default();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::constant(Rat::one());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = xi - xj;
                if d.is_zero() {
                    return Err(ExactError::OutOfRange(format!("repeated node {}", fmt_rat(xi))));
                }
                basis = &basis * &Self::linear(-xj / &d, Rat::one() / &d);
            }
            out = &out + &basis.scale(yi);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(Rat::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = Rat::zero();
        UPoly::new((0..n).map(|k| self.c.get(k).unwrap_or(&z) + o.c.get(k).unwrap_or(&z)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &o.scale(&-Rat::one())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (j, a) in self.c.iter().enumerate() {
            for (k, b) in o.c.iter().enumerate() {
                c[j + k] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl std::fmt::Display for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => fmt_rat(x),
                1 => format!("{}*t", fmt_rat(x)),
                _ => format!("{}*t^{}", fmt_rat(x), k),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Piecewise polynomial on b₀ < b₁ < ... < b_k, one piece per interval.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly1D {
    pub var: String,
    breaks: Vec<Rat>,
    pieces: Vec<UPoly>,
}

impl PiecewisePoly1D {
    pub fn new(var: &str, breaks: Vec<Rat>, pieces: Vec<UPoly>) -> Result<Self, ExactError> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(ExactError::Shape("need one more breakpoint than pieces".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExactError::Shape("breakpoints must strictly increase".into()));
        }
        Ok(Self { var: var.to_string(), breaks, pieces })
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UPoly] {
        &self.pieces
    }

    fn span_check(&self, lo: &Rat, hi: &Rat) -> Result<(), ExactError> {
        let (a, b) = (&self.breaks[0], self.breaks.last().unwrap());
        if lo < a || hi > b || lo > hi {
            return Err(ExactError::OutOfRange(format!(
                "[{}, {}] not inside [{}, {}]",
                fmt_rat(lo),
                fmt_rat(hi),
                fmt_rat(a),
                fmt_rat(b)
            )));
        }
        Ok(())
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat, ExactError> {
        self.span_check(t, t)?;
        let k = self.breaks[1..].iter().position(|b| t <= b).unwrap_or(self.pieces.len() - 1);
        Ok(self.pieces[k].eval(t))
    }

    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Result<Rat, ExactError> {
        self.span_check(lo, hi)?;
        let mut s = Rat::zero();
        for (k, p) in self.pieces.iter().enumerate() {
            let a = (&self.breaks[k]).max(lo);
            let b = (&self.breaks[k + 1]).min(hi);
            if a < b {
                s += p.integrate(a, b);
            }
        }
        Ok(s)
    }
}
