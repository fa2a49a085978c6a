use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_rat, Rat};
use crate::ExactError;

/// Element of Q(ζ) with ζ a primitive 24th root of unity, stored over the power
/// basis 1, ζ, ..., ζ⁷ modulo ζ⁸ − ζ⁴ + 1 with a common denominator.
///
/// Fixed embedding: ζ = exp(2πi/24), so i = ζ⁶, √2 = ζ³ + ζ²¹, √3 = ζ² + ζ²².
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    num: [BigInt; 8],
    den: BigInt,
}

const GALOIS: [usize; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

fn zeta_table() -> &'static [[i64; 8]; 24] {
    static T: OnceLock<[[i64; 8]; 24]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [[0i64; 8]; 24];
        let mut cur = [0i64; 8];
        cur[0] = 1;
        for row in t.iter_mut() {
            *row = cur;
            // multiply by ζ, then ζ⁸ = ζ⁴ − 1
            let top = cur[7];
            for k in (1..8).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = -top;
            cur[4] += top;
        }
        t
    })
}

/// Names of the display basis {1, √2, √3, √6} × {1, i}.
const DISPLAY_NAMES: [&str; 8] = ["", "r2", "r3", "r2*r3", "i", "r2*i", "r3*i", "r2*r3*i"];

fn display_basis() -> &'static ([CycloNum; 8], Vec<Vec<Rat>>) {
    static B: OnceLock<([CycloNum; 8], Vec<Vec<Rat>>)> = OnceLock::new();
    B.get_or_init(|| {
        let one = CycloNum::one();
        let r2 = CycloNum::r2();
        let r3 = CycloNum::r3();
        let i = CycloNum::i();
        let r6 = &r2 * &r3;
        let basis = [
            one,
            r2.clone(),
            r3.clone(),
            r6.clone(),
            i.clone(),
            &r2 * &i,
            &r3 * &i,
            &r6 * &i,
        ];
        // columns are basis vectors in ζ coordinates
        let mut m: Vec<Vec<Rat>> = (0..8)
            .map(|row| (0..8).map(|col| basis[col].coeff(row)).collect())
            .collect();
        let inv = crate::linalg::inverse(&mut m).expect("display basis is a basis");
        (basis, inv)
    })
}

impl CycloNum {
    fn from_parts(num: [BigInt; 8], den: BigInt) -> Self {
        let mut x = CycloNum { num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero() -> Self {
        CycloNum { num: Default::default(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut x = Self::zero();
        x.num[0] = BigInt::from(n);
        x
    }

    pub fn from_rat(q: &Rat) -> Self {
        let mut num: [BigInt; 8] = Default::default();
        num[0] = q.numer().clone();
        CycloNum { num, den: q.denom().clone() }
    }

    /// ζ^m for any integer m.
    pub fn zeta_pow(m: i64) -> Self {
        let row = zeta_table()[m.rem_euclid(24) as usize];
        CycloNum { num: row.map(BigInt::from), den: BigInt::one() }
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    pub fn r2() -> Self {
        &Self::zeta_pow(3) + &Self::zeta_pow(21)
    }

    pub fn r3() -> Self {
        &Self::zeta_pow(2) + &Self::zeta_pow(22)
    }

    /// Coordinate of ζ^k, k < 8.
    pub fn coeff(&self, k: usize) -> Rat {
        Rat::new(self.num[k].clone(), self.den.clone())
    }

    pub fn from_coeffs(c: &[Rat; 8]) -> Self {
        let mut den = BigInt::one();
        for q in c {
            den = den.lcm(q.denom());
        }
        let num = std::array::from_fn(|k| c[k].numer() * (&den / c[k].denom()));
        Self::from_parts(num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coeff(0))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        let num = self.num.clone().map(|c| c * q.numer());
        Self::from_parts(num, &self.den * q.denom())
    }

    /// Field automorphism ζ ↦ ζ^k, gcd(k, 24) = 1.
    pub fn galois(&self, k: usize) -> Self {
        let t = zeta_table();
        let mut num: [BigInt; 8] = Default::default();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t[(j * k) % 24];
            for (n, r) in num.iter_mut().zip(row) {
                if *r != 0 {
                    *n += c * r;
                }
            }
        }
        Self::from_parts(num, self.den.clone())
    }

    /// Complex conjugation under the fixed embedding.
    pub fn conj(&self) -> Self {
        self.galois(23)
    }

    pub fn norm(&self) -> Rat {
        let mut p = Self::one();
        for k in GALOIS {
            p = &p * &self.galois(k);
        }
        p.to_rat().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut b = Self::one();
        for k in &GALOIS[1..] {
            b = &b * &self.galois(*k);
        }
        let n = (self * &b).to_rat().expect("norm is rational");
        Ok(b.scale(&(Rat::one() / n)))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        r
    }

    /// Coordinates in the display basis 1, √2, √3, √6, i, i√2, i√3, i√6.
    pub fn display_coords(&self) -> [Rat; 8] {
        let (_, inv) = display_basis();
        std::array::from_fn(|row| {
            let mut s = Rat::zero();
            for (col, m) in inv[row].iter().enumerate() {
                if !m.is_zero() && !self.num[col].is_zero() {
                    s += m * self.coeff(col);
                }
            }
            s
        })
    }

    /// Number of nonzero display coordinates.
    pub fn display_terms(&self) -> usize {
        self.display_coords().iter().filter(|q| !q.is_zero()).count()
    }
}

/// An arbitrary total order (by power-basis coordinates), so field elements can key ordered sets.
impl Ord for CycloNum {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (0..8).map(|k| self.coeff(k).cmp(&o.coeff(k))).find(|c| c.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rat> for CycloNum {
    fn from(q: Rat) -> Self {
        Self::from_rat(&q)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        if self.den == o.den {
            let num = std::array::from_fn(|k| &self.num[k] + &o.num[k]);
            return CycloNum::from_parts(num, self.den.clone());
        }
        let num = std::array::from_fn(|k| &self.num[k] * &o.den + &o.num[k] * &self.den);
        CycloNum::from_parts(num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self + &(-o)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { num: self.num.clone().map(|c| -c), den: self.den.clone() }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        let mut c: [BigInt; 15] = Default::default();
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    c[j + k] += a * b;
                }
            }
        }
        for k in (8..15).rev() {
            let t = std::mem::take(&mut c[k]);
            if !t.is_zero() {
                c[k - 4] += &t;
                c[k - 8] -= &t;
            }
        }
        let num = std::array::from_fn(|k| std::mem::take(&mut c[k]));
        CycloNum::from_parts(num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    /// Panics on division by zero; use [`CycloNum::checked_div`] for the error value.
    fn div(self, o: &CycloNum) -> CycloNum {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, o: CycloNum) -> CycloNum { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, o: &CycloNum) -> CycloNum { (&self).$f(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.display_coords();
        let mut out = String::new();
        for (q, name) in coords.iter().zip(DISPLAY_NAMES) {
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            let body = if name.is_empty() {
                fmt_rat(&mag)
            } else if mag.is_one() {
                name.to_string()
            } else {
                format!("{}*{}", fmt_rat(&mag), name)
            };
            if out.is_empty() {
                if q.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if q.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CycloNum {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let p = crate::parse::parse_poly(s)?;
        p.to_constant().ok_or(ExactError::Parse { pos: 0, msg: format!("not a constant: {s:?}") })
    }
}
