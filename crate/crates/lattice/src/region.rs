use std::collections::BTreeMap;
use std::fmt;

use exactnum::{fmt_rat, int, var_index, MultiPoly, Rat};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn2;
use crate::LatticeError;

/// u ∈ [u0, u1], lo(u) ≤ v ≤ hi(u). A flat region is a u-interval on the line v = lo(u).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    #[serde(with = "exactnum::serde_str::rat")]
    pub u0: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub u1: Rat,
    pub lo: AffineFn2,
    pub hi: AffineFn2,
    pub flat: bool,
}

/// Which signs an affine function takes on a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignPattern {
    pub neg: bool,
    pub pos: bool,
}

impl SignPattern {
    pub fn mixed(&self) -> bool {
        self.neg && self.pos
    }
    pub fn nonneg(&self) -> bool {
        !self.neg
    }
    pub fn somewhere_negative(&self) -> bool {
        self.neg && !self.pos
    }
    pub fn zero(&self) -> bool {
        !self.neg && !self.pos
    }
}

impl Region {
    pub fn new(u0: Rat, u1: Rat, lo: AffineFn2, hi: AffineFn2) -> Result<Self, LatticeError> {
        if !lo.cv.is_zero() || !hi.cv.is_zero() {
            return Err(LatticeError::Region("v-bounds must be functions of u".into()));
        }
        if u0 >= u1 {
            return Err(LatticeError::Region(format!("empty u-interval [{}, {}]", fmt_rat(&u0), fmt_rat(&u1))));
        }
        let zero = Rat::zero();
        if lo.eval(&u0, &zero) > hi.eval(&u0, &zero) || lo.eval(&u1, &zero) > hi.eval(&u1, &zero) {
            return Err(LatticeError::Region("lower bound above upper bound".into()));
        }
        let flat = lo == hi;
        Ok(Region { u0, u1, lo, hi, flat })
    }

    /// The segment u ∈ [u0, u1], v = 0.
    pub fn interval(u0: Rat, u1: Rat) -> Result<Self, LatticeError> {
        Self::new(u0, u1, AffineFn2::zero(), AffineFn2::zero())
    }

    pub fn vertices(&self) -> Vec<(Rat, Rat)> {
        let z = Rat::zero();
        let mut out = Vec::with_capacity(4);
        for u in [&self.u0, &self.u1] {
            out.push((u.clone(), self.lo.eval(u, &z)));
            if !self.flat {
                out.push((u.clone(), self.hi.eval(u, &z)));
            }
        }
        out
    }

    pub fn signs(&self, f: &AffineFn2) -> SignPattern {
        let mut s = SignPattern { neg: false, pos: false };
        for (u, v) in self.vertices() {
            let x = f.eval(&u, &v);
            if x.is_negative() {
                s.neg = true;
            } else if x.is_positive() {
                s.pos = true;
            }
        }
        s
    }

    pub fn contains(&self, u: &Rat, v: &Rat) -> bool {
        let z = Rat::zero();
        u >= &self.u0 && u <= &self.u1 && v >= &self.lo.eval(u, &z) && v <= &self.hi.eval(u, &z)
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> (Rat, Rat) {
        let u = (&self.u0 + &self.u1) / int(2);
        let z = Rat::zero();
        let v = (self.lo.eval(&u, &z) + self.hi.eval(&u, &z)) / int(2);
        (u, v)
    }

    pub fn area(&self) -> Rat {
        let w = &self.hi - &self.lo;
        let z = Rat::zero();
        (w.eval(&self.u0, &z) + w.eval(&self.u1, &z)) * (&self.u1 - &self.u0) / int(2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.u0 >= self.u1 || (!self.flat && self.area().is_zero())
    }

    fn with_u(&self, a: &Rat, b: &Rat) -> Region {
        Region { u0: a.clone(), u1: b.clone(), lo: self.lo.clone(), hi: self.hi.clone(), flat: self.flat }
    }

    /// Cut at the given u values (those strictly inside are used).
    pub fn split_u(&self, cuts: &[Rat]) -> Vec<Region> {
        let mut pts: Vec<Rat> = cuts.iter().filter(|c| **c > self.u0 && **c < self.u1).cloned().collect();
        pts.sort();
        pts.dedup();
        let mut edges = vec![self.u0.clone()];
        edges.extend(pts);
        edges.push(self.u1.clone());
        edges.windows(2).map(|w| self.with_u(&w[0], &w[1])).collect()
    }

    /// Pieces on which `f` has a constant sign pattern (never mixed). Degenerate pieces are dropped.
    pub fn split(&self, f: &AffineFn2) -> Vec<Region> {
        if !self.signs(f).mixed() {
            return vec![self.clone()];
        }
        let z = Rat::zero();
        if f.cv.is_zero() {
            let root = -&f.c0 / &f.cu;
            return self.split_u(&[root]).into_iter().filter(|r| !r.is_degenerate()).collect();
        }
        // wall v = w(u)
        let w = AffineFn2::in_u(-&f.c0 / &f.cv, -&f.cu / &f.cv);
        let mut cuts = Vec::new();
        for b in [&self.lo, &self.hi] {
            let d = &w - b;
            if !d.cu.is_zero() {
                cuts.push(-&d.c0 / &d.cu);
            }
        }
        let mut out = Vec::new();
        for piece in self.split_u(&cuts) {
            let (um, _) = piece.interior_point();
            let wm = w.eval(&um, &z);
            if !piece.flat && wm > piece.lo.eval(&um, &z) && wm < piece.hi.eval(&um, &z) {
                out.push(Region { hi: w.clone(), flat: false, ..piece.clone() });
                out.push(Region { lo: w.clone(), flat: false, ..piece });
            } else {
                out.push(piece);
            }
        }
        out.retain(|r| !r.is_degenerate());
        out
    }

    /// ∫∫ p du dv over the region (∫ p(u, lo(u)) du when flat). `p` may carry other variables.
    pub fn integrate(&self, p: &MultiPoly) -> MultiPoly {
        let u = var_index("u").unwrap();
        let v = var_index("v").unwrap();
        let inner = if self.flat {
            p.subst(&BTreeMap::from([(v, self.lo.to_poly())]))
        } else {
            p.integrate(v, &self.lo.to_poly(), &self.hi.to_poly())
        };
        inner.integrate(u, &MultiPoly::from_rat(&self.u0), &MultiPoly::from_rat(&self.u1))
    }

    /// Sort key: u-interval first, then height at the interior point.
    pub fn order_key(&self) -> (Rat, Rat, Rat, Rat) {
        let (_, v) = self.interior_point();
        (self.u0.clone(), self.u1.clone(), v, self.hi.eval(&self.u0, &Rat::zero()))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flat {
            write!(f, "u in [{}, {}], v = {}", fmt_rat(&self.u0), fmt_rat(&self.u1), self.lo)
        } else {
            write!(f, "u in [{}, {}], {} <= v <= {}", fmt_rat(&self.u0), fmt_rat(&self.u1), self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
