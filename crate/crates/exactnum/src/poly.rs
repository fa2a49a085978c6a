use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::cyclo::CycloNum;
use crate::piecewise::UPoly;
use crate::rat::Rat;
use crate::ExactError;

/// The fixed variable universe, in monomial order.
pub const VARS: [&str; 17] = [
    "x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3", "x", "y", "z", "u", "v", "a", "t", "lambda", "e",
];
pub const NV: usize = VARS.len();

pub type Mono = [u16; NV];

pub fn var_index(name: &str) -> Option<usize> {
    let name = if name == "λ" { "lambda" } else { name };
    VARS.iter().position(|v| *v == name)
}

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// All monomials of total degree `d` in the given variables.
pub fn monomials_of_degree(vars: &[usize], d: u32) -> Vec<Mono> {
    fn rec(vars: &[usize], d: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        match vars {
            [] => {
                if d == 0 {
                    out.push(*cur)
                }
            }
            [last] => {
                cur[*last] = d as u16;
                out.push(*cur);
                cur[*last] = 0;
            }
            [first, rest @ ..] => {
                for k in (0..=d).rev() {
                    cur[*first] = k as u16;
                    rec(rest, d - k, cur, out);
                }
                cur[*first] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut [0; NV], &mut out);
    out
}

/// Sparse polynomial over [`CycloNum`] in the variables of [`VARS`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, CycloNum>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CycloNum::one())
    }

    pub fn constant(c: CycloNum) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NV], c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(CycloNum::from_int(n))
    }

    pub fn from_rat(q: &Rat) -> Self {
        Self::constant(CycloNum::from_rat(q))
    }

    pub fn var(idx: usize) -> Self {
        let mut m = [0; NV];
        m[idx] = 1;
        Self::monomial(m, CycloNum::one())
    }

    pub fn named(name: &str) -> Result<Self, ExactError> {
        var_index(name)
            .map(Self::var)
            .ok_or_else(|| ExactError::Parse { pos: 0, msg: format!("unknown variable {name:?}") })
    }

    pub fn monomial(m: Mono, c: CycloNum) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycloNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Mono) -> CycloNum {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn to_constant(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(CycloNum::zero()),
            1 => self.terms.get(&[0; NV]).cloned(),
            _ => None,
        }
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.to_constant()?.to_rat()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(mono_degree).max().unwrap_or(0)
    }

    /// Total degree restricted to the given variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m[v] as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var] as u32).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(mono_degree);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Homogeneous in `vars` of the given degree (other variables act as parameters).
    pub fn is_homogeneous_in(&self, vars: &[usize], d: u32) -> bool {
        self.terms.keys().all(|m| vars.iter().map(|&v| m[v] as u32).sum::<u32>() == d)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..NV).filter(|&v| self.terms.keys().any(|m| m[v] > 0)).collect()
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_rat(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (*m, x.scale(q))).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycloNum) -> CycloNum) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(CycloNum::conj)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Simultaneous substitution; unbound variables pass through.
    pub fn subst(&self, bind: &BTreeMap<usize, MultiPoly>) -> Self {
        let mut powers: BTreeMap<(usize, u16), MultiPoly> = BTreeMap::new();
        for (v, q) in bind {
            let maxe = self.terms.keys().map(|m| m[*v]).max().unwrap_or(0);
            let mut cur = Self::one();
            for e in 1..=maxe {
                cur = &cur * q;
                powers.insert((*v, e), cur.clone());
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut term = Self::zero();
            for v in bind.keys() {
                rest[*v] = 0;
            }
            term.add_term(rest, c.clone());
            for v in bind.keys() {
                if m[*v] > 0 {
                    term = &term * &powers[&(*v, m[*v])];
                }
            }
            out = out + term;
        }
        out
    }

    pub fn subst_named(&self, bind: &[(&str, MultiPoly)]) -> Result<Self, ExactError> {
        let mut map = BTreeMap::new();
        for (n, p) in bind {
            let v = var_index(n)
                .ok_or_else(|| ExactError::Parse { pos: 0, msg: format!("unknown variable {n:?}") })?;
            map.insert(v, p.clone());
        }
        Ok(self.subst(&map))
    }

    /// Substitute constants for variables.
    pub fn eval(&self, vals: &BTreeMap<usize, CycloNum>) -> Self {
        let bind = vals.iter().map(|(v, c)| (*v, Self::constant(c.clone()))).collect();
        self.subst(&bind)
    }

    /// Evaluate with x-type variables bound in order; returns a polynomial in the remaining variables.
    pub fn eval_point(&self, vars: &[usize], point: &[CycloNum]) -> Self {
        let vals = vars.iter().copied().zip(point.iter().cloned()).collect();
        self.eval(&vals)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut n = *m;
            n[var] -= 1;
            p.add_term(n, c.scale(&Rat::from_integer((m[var] as i64).into())));
        }
        p
    }

    pub fn antiderivative(&self, var: usize) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            let mut n = *m;
            n[var] += 1;
            p.add_term(n, c.scale(&Rat::new(1.into(), (n[var] as i64).into())));
        }
        p
    }

    /// ∫_lo^hi p d(var), bounds being polynomials free of `var`.
    pub fn integrate(&self, var: usize, lo: &MultiPoly, hi: &MultiPoly) -> Self {
        let f = self.antiderivative(var);
        let at = |b: &MultiPoly| f.subst(&BTreeMap::from([(var, b.clone())]));
        at(hi) - at(lo)
    }

    /// Coefficient of var^k, as a polynomial in the other variables.
    pub fn coefficient_of(&self, var: usize, k: u16) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m[var] == k {
                let mut n = *m;
                n[var] = 0;
                p.add_term(n, c.clone());
            }
        }
        p
    }

    /// Coefficient vector over the given monomial list; errors if a term falls outside it.
    pub fn coeff_vector(&self, monos: &[Mono]) -> Result<Vec<CycloNum>, ExactError> {
        let index: BTreeMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![CycloNum::zero(); monos.len()];
        for (m, c) in &self.terms {
            let i = index.get(m).ok_or(ExactError::Shape("term outside monomial basis".into()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coeff_vector(monos: &[Mono], v: &[CycloNum]) -> Self {
        let mut p = Self::zero();
        for (m, c) in monos.iter().zip(v) {
            p.add_term(*m, c.clone());
        }
        p
    }

    /// Exact division by a monomial, if every term is divisible.
    pub fn div_monomial(&self, d: &Mono) -> Option<Self> {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            let mut n = *m;
            for k in 0..NV {
                n[k] = m[k].checked_sub(d[k])?;
            }
            p.add_term(n, c.clone());
        }
        Some(p)
    }

    /// Univariate view over Q in `var`.
    pub fn to_upoly(&self, var: usize) -> Result<UPoly, ExactError> {
        let mut c = vec![Rat::zero(); self.degree_in(var) as usize + 1];
        for (m, x) in &self.terms {
            if m.iter().enumerate().any(|(k, &e)| k != var && e > 0) {
                return Err(ExactError::NotUnivariate(VARS[var].to_string()));
            }
            c[m[var] as usize] = x.to_rat().ok_or(ExactError::NotRational)?;
        }
        Ok(UPoly::new(c))
    }

    pub fn from_upoly(p: &UPoly, var: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = [0; NV];
            m[var] = k as u16;
            out.add_term(m, CycloNum::from_rat(c));
        }
        out
    }

    fn sorted_terms(&self) -> Vec<(&Mono, &CycloNum)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| mono_degree(b.0).cmp(&mono_degree(a.0)).then(b.0.cmp(a.0)));
        t
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(VARS[k].to_string()),
            _ => parts.push(format!("{}^{}", VARS[k], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in self.sorted_terms() {
            let mono = fmt_mono(m);
            let coef = c.to_string();
            let simple = c.display_terms() == 1;
            let term = if mono.is_empty() {
                if simple { coef } else { format!("({coef})") }
            } else if !simple {
                format!("({coef})*{mono}")
            } else if coef == "1" {
                mono
            } else if coef == "-1" {
                format!("-{mono}")
            } else {
                format!("{coef}*{mono}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiPoly {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, ExactError> {
        crate::parse::parse_poly(s)
    }
}

impl From<CycloNum> for MultiPoly {
    fn from(c: CycloNum) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Mono, CycloNum> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = std::array::from_fn(|k| m1[k] + m2[k]);
                let prod = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: &MultiPoly) -> MultiPoly { (&self).$f(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}
