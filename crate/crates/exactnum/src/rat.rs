use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ExactError;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse { pos: 0, msg: format!("not a rational: {s:?}") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Canonical exact rendering: `p` or `p/q`.
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_sign(q: &Rat) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_pow(q: &Rat, k: u32) -> Rat {
    let mut r = Rat::one();
    for _ in 0..k {
        r *= q;
    }
    r
}

/// Exact integer k-th root of a non-negative rational, if it exists.
pub fn rat_root(q: &Rat, k: u32) -> Option<Rat> {
    if q.is_negative() {
        if k % 2 == 1 {
            return rat_root(&-q, k).map(|r| -r);
        }
        return None;
    }
    let n = q.numer().to_biguint()?;
    let d = q.denom().to_biguint()?;
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if rn.pow(k) == n && rd.pow(k) == d {
        Some(Rat::new(rn.into(), rd.into()))
    } else {
        None
    }
}
