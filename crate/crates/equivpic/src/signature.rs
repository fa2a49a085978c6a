use std::fmt;
use std::str::FromStr;

use exactnum::{fmt_rat, Rat};
use groups::AbelianGroupStructure;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{PicError, Result};

/// [g; e₁, …, eₙ] with the periods sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub genus: u32,
    pub periods: Vec<u64>,
}

impl Signature {
    pub fn new(genus: u32, mut periods: Vec<u64>) -> Result<Self> {
        periods.sort_unstable();
        let s = Signature { genus, periods };
        if s.periods.iter().any(|&e| e < 2) {
            return Err(PicError::Parse(s.to_string()));
        }
        Ok(s)
    }

    /// Orbifold Euler characteristic 2g − 2 + Σ(1 − 1/eᵢ).
    pub fn euler(&self) -> Rat {
        let mut x = Rat::from_integer((2 * self.genus as i64 - 2).into());
        for &e in &self.periods {
            x += Rat::one() - Rat::new(1.into(), (e as i64).into());
        }
        x
    }

    pub fn lcm(&self) -> u64 {
        self.periods.iter().fold(1, |acc, e| acc.lcm(e))
    }

    /// d_k: gcd of all products of k distinct periods.
    pub fn d(&self, k: usize) -> u64 {
        fn go(es: &[u64], k: usize, prod: u64, acc: &mut u64) {
            if k == 0 {
                *acc = acc.gcd(&prod);
                return;
            }
            for j in 0..es.len() {
                go(&es[j + 1..], k - 1, prod * es[j], acc);
            }
        }
        if k == 0 {
            return 1;
        }
        let mut acc = 0;
        go(&self.periods, k, 1, &mut acc);
        acc
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "[{};{}]", self.genus, es.join(","))
    }
}

impl FromStr for Signature {
    type Err = PicError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || PicError::Parse(s.to_string());
        let body = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (g, rest) = body.split_once(';').unwrap_or((body, ""));
        let genus = g.trim().parse().map_err(|_| bad())?;
        let periods = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<Vec<u64>>>()?;
        Signature::new(genus, periods)
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Riemann–Hurwitz: 2·genus − 2 = |G|·(2g − 2 + Σ(1 − 1/eᵢ)).
pub fn rh_check(sig: &Signature, group_order: u64, curve_genus: u64) -> bool {
    let lhs = Rat::from_integer((2 * curve_genus as i64 - 2).into());
    lhs == sig.euler() * Rat::from_integer((group_order as i64).into())
}

/// ℤ ⊕ torsion, with the degree of a generator of the free part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicStructure {
    pub group: AbelianGroupStructure,
    #[serde(with = "exactnum::serde_str::rat")]
    pub degree: Rat,
}

impl PicStructure {
    pub fn new(torsion: &[u64], degree: Rat) -> Self {
        PicStructure { group: AbelianGroupStructure::from_cyclic(1, torsion), degree }
    }

    pub fn torsion(&self) -> AbelianGroupStructure {
        AbelianGroupStructure { free_rank: 0, factors: self.group.factors.clone() }
    }
}

impl fmt::Display for PicStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg {})", self.group, fmt_rat(&self.degree))
    }
}

/// Pic(G, C) for an action on a plane quartic with quotient ℙ¹.
pub fn pic_glc(sig: &Signature) -> Result<PicStructure> {
    if sig.genus != 0 {
        return Err(PicError::PositiveGenus(sig.to_string()));
    }
    let n = sig.periods.len();
    if n == 0 {
        return Err(PicError::Parse(sig.to_string()));
    }
    let a: Vec<u64> = (1..n).map(|k| sig.d(k) / sig.d(k - 1)).collect();
    // 4 = deg K_C = lcm(e)·(n − 2 − Σ 1/eᵢ)·deg γ
    let chi = sig.euler();
    if chi.is_zero() {
        return Err(PicError::Euclidean(sig.to_string()));
    }
    let degree = Rat::from_integer(4.into()) / (chi * Rat::from_integer((sig.lcm() as i64).into()));
    if !degree.is_integer() || degree <= Rat::zero() {
        return Err(PicError::NonIntegralDegree(fmt_rat(&degree)));
    }
    Ok(PicStructure::new(&a, degree))
}
