use std::collections::BTreeMap;
use std::fmt::Write as _;

use exactnum::{fmt_rat, int, var_index, MultiPoly, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn2;
use crate::LatticeError;

/// Named basis with a symmetric Gram matrix. Entries may involve the ruled-surface parameter `e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceLattice {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(with = "exactnum::serde_str::poly_mat")]
    pub gram: Vec<Vec<MultiPoly>>,
}

impl SurfaceLattice {
    pub fn new(name: &str, basis: &[&str], gram: Vec<Vec<MultiPoly>>) -> Result<Self, LatticeError> {
        let n = basis.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Invalid(format!("{name}: Gram matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Invalid(format!("{name}: Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SurfaceLattice { name: name.into(), basis: basis.iter().map(|s| s.to_string()).collect(), gram })
    }

    pub fn from_rat(name: &str, basis: &[&str], gram: &[Vec<Rat>]) -> Result<Self, LatticeError> {
        let g = gram.iter().map(|r| r.iter().map(MultiPoly::from_rat).collect()).collect();
        Self::new(name, basis, g)
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let lat: SurfaceLattice = serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))?;
        let basis: Vec<&str> = lat.basis.iter().map(|s| s.as_str()).collect();
        Self::new(&lat.name, &basis, lat.gram)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Result<usize, LatticeError> {
        self.basis.iter().position(|b| b == name).ok_or_else(|| LatticeError::UnknownBasis(name.into()))
    }

    pub fn is_symbolic(&self) -> bool {
        self.gram.iter().flatten().any(|g| g.to_rat().is_none())
    }

    /// Substitute a value for `e`.
    pub fn specialize(&self, e: &Rat) -> SurfaceLattice {
        let gram = self.gram.iter().map(|r| r.iter().map(|g| subst_e(g, e)).collect()).collect();
        SurfaceLattice { name: self.name.clone(), basis: self.basis.clone(), gram }
    }

    pub fn rat_gram(&self) -> Result<Vec<Vec<Rat>>, LatticeError> {
        self.gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|g| {
                        g.to_rat()
                            .ok_or_else(|| LatticeError::Invalid(format!("{}: symbolic Gram entry {g}", self.name)))
                    })
                    .collect()
            })
            .collect()
    }

    fn check(&self, lattice: &str) -> Result<(), LatticeError> {
        if lattice != self.name {
            return Err(LatticeError::Mismatch(format!("class on {lattice}, lattice is {}", self.name)));
        }
        Ok(())
    }

    pub fn pair_sym(&self, a: &SymClass, b: &SymClass) -> Result<MultiPoly, LatticeError> {
        self.check(&a.lattice)?;
        self.check(&b.lattice)?;
        let mut s = MultiPoly::zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                s = &s + &(&(ai * bj) * &self.gram[i][j]);
            }
        }
        Ok(s)
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<MultiPoly, LatticeError> {
        self.pair_sym(&a.to_sym(), &b.to_sym())
    }

    pub fn pair_rat(&self, a: &[Rat], b: &[Rat]) -> Result<Rat, LatticeError> {
        let g = self.rat_gram()?;
        Ok(bilinear(&g, a, b))
    }

    /// The covector D ↦ D·C for a constant class C.
    pub fn dual(&self, class: &[Rat]) -> Result<Vec<Rat>, LatticeError> {
        let g = self.rat_gram()?;
        Ok((0..self.rank()).map(|i| (0..self.rank()).map(|j| &g[i][j] * &class[j]).sum()).collect())
    }

    /// Integer class from (basis name, coefficient) pairs.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<Vec<Rat>, LatticeError> {
        let mut c = vec![Rat::zero(); self.rank()];
        for (name, k) in terms {
            c[self.index(name)?] += int(*k);
        }
        Ok(c)
    }

    pub fn format_class(&self, coeffs: &[Rat]) -> String {
        format_terms(&self.basis, coeffs.iter().map(|q| (q.is_zero(), fmt_rat(q))))
    }
}

pub(crate) fn bilinear(g: &[Vec<Rat>], a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            s += ai * bj * &g[i][j];
        }
    }
    s
}

fn subst_e(p: &MultiPoly, e: &Rat) -> MultiPoly {
    let ev = var_index("e").unwrap();
    p.subst(&BTreeMap::from([(ev, MultiPoly::from_rat(e))]))
}

/// "c1*b1 + c2*b2 ..." with compound coefficients parenthesized.
pub(crate) fn format_terms(basis: &[String], coeffs: impl Iterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for ((zero, c), b) in coeffs.zip(basis) {
        if zero {
            continue;
        }
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if !rest.contains([' ', '+', '-']) => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        let term = if body == "1" {
            b.clone()
        } else if body.contains(' ') {
            format!("({body})*{b}")
        } else {
            format!("{body}*{b}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            let _ = write!(out, " {} {term}", if neg { '-' } else { '+' });
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Class with polynomial coefficients (in u, v, e).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymClass {
    pub lattice: String,
    #[serde(with = "exactnum::serde_str::poly_vec")]
    pub coeffs: Vec<MultiPoly>,
}

impl SymClass {
    pub fn new(lattice: &str, coeffs: Vec<MultiPoly>) -> Self {
        SymClass { lattice: lattice.into(), coeffs }
    }

    pub fn zero(lattice: &str, rank: usize) -> Self {
        Self::new(lattice, vec![MultiPoly::zero(); rank])
    }

    pub fn from_rat(lattice: &str, c: &[Rat]) -> Self {
        Self::new(lattice, c.iter().map(MultiPoly::from_rat).collect())
    }

    pub fn add(&self, o: &SymClass) -> Result<SymClass, LatticeError> {
        self.same(o)?;
        Ok(Self::new(&self.lattice, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &SymClass) -> Result<SymClass, LatticeError> {
        self.same(o)?;
        Ok(Self::new(&self.lattice, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, p: &MultiPoly) -> SymClass {
        Self::new(&self.lattice, self.coeffs.iter().map(|a| a * p).collect())
    }

    fn same(&self, o: &SymClass) -> Result<(), LatticeError> {
        if self.lattice != o.lattice || self.coeffs.len() != o.coeffs.len() {
            return Err(LatticeError::Mismatch(format!("{} vs {}", self.lattice, o.lattice)));
        }
        Ok(())
    }

    pub fn specialize(&self, e: &Rat) -> SymClass {
        Self::new(&self.lattice, self.coeffs.iter().map(|p| subst_e(p, e)).collect())
    }

    pub fn to_affine(&self) -> Result<DivisorClass, LatticeError> {
        let coeffs = self.coeffs.iter().map(AffineFn2::try_from).collect::<Result<_, _>>()?;
        Ok(DivisorClass { lattice: self.lattice.clone(), coeffs })
    }

    pub fn format(&self, basis: &[String]) -> String {
        format_terms(basis, self.coeffs.iter().map(|p| (p.is_zero(), p.to_string())))
    }
}

/// Class with coefficients affine in (u, v).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub lattice: String,
    pub coeffs: Vec<AffineFn2>,
}

impl DivisorClass {
    pub fn new(lattice: &str, coeffs: Vec<AffineFn2>) -> Self {
        DivisorClass { lattice: lattice.into(), coeffs }
    }

    pub fn constant(lattice: &str, c: &[Rat]) -> Self {
        Self::new(lattice, c.iter().map(|q| AffineFn2::constant(q.clone())).collect())
    }

    pub fn zero(lattice: &str, rank: usize) -> Self {
        Self::new(lattice, vec![AffineFn2::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// self + f·class
    pub fn add_scaled(&self, class: &[Rat], f: &AffineFn2) -> DivisorClass {
        let coeffs = self.coeffs.iter().zip(class).map(|(a, c)| a + &f.scale(c)).collect();
        Self::new(&self.lattice, coeffs)
    }

    pub fn add(&self, o: &DivisorClass) -> DivisorClass {
        Self::new(&self.lattice, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &DivisorClass) -> DivisorClass {
        Self::new(&self.lattice, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, q: &Rat) -> DivisorClass {
        Self::new(&self.lattice, self.coeffs.iter().map(|a| a.scale(q)).collect())
    }

    /// Pairing with a covector: Σ dualᵢ·coeffᵢ.
    pub fn apply(&self, dual: &[Rat]) -> AffineFn2 {
        let mut s = AffineFn2::zero();
        for (a, d) in self.coeffs.iter().zip(dual) {
            if !d.is_zero() {
                s = &s + &a.scale(d);
            }
        }
        s
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Vec<Rat> {
        self.coeffs.iter().map(|a| a.eval(u, v)).collect()
    }

    pub fn to_sym(&self) -> SymClass {
        SymClass::new(&self.lattice, self.coeffs.iter().map(|a| a.to_poly()).collect())
    }

    /// Same class viewed on a lattice with extra basis elements appended (pullback under a blow-up).
    pub fn extend(&self, lattice: &str, rank: usize) -> DivisorClass {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(rank, AffineFn2::zero());
        Self::new(lattice, coeffs)
    }

    pub fn format(&self, basis: &[String]) -> String {
        format_terms(basis, self.coeffs.iter().map(|a| (a.is_zero(), a.to_string())))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub source: String,
    #[serde(with = "exactnum::serde_str::poly_vec")]
    pub image: Vec<MultiPoly>,
}

/// Images of source basis divisors on a target surface lattice (entries may involve `e`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictionTable {
    pub source: String,
    pub target: String,
    pub entries: Vec<TableEntry>,
}

impl RestrictionTable {
    pub fn new(source: &str, target: &str) -> Self {
        RestrictionTable { source: source.into(), target: target.into(), entries: Vec::new() }
    }

    pub fn with(mut self, name: &str, image: Vec<MultiPoly>) -> Self {
        self.entries.push(TableEntry { source: name.into(), image });
        self
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))
    }

    pub fn image(&self, name: &str) -> Result<&[MultiPoly], LatticeError> {
        self.entries
            .iter()
            .find(|t| t.source == name)
            .map(|t| t.image.as_slice())
            .ok_or_else(|| LatticeError::MissingEntry(name.into()))
    }

    pub fn specialize(&self, e: &Rat) -> RestrictionTable {
        let entries = self
            .entries
            .iter()
            .map(|t| TableEntry { source: t.source.clone(), image: t.image.iter().map(|p| subst_e(p, e)).collect() })
            .collect();
        RestrictionTable { entries, ..self.clone() }
    }

    /// Linear extension of the table; `source_basis` names the coefficients of `d`.
    pub fn restrict(&self, source_basis: &[String], d: &SymClass) -> Result<SymClass, LatticeError> {
        if d.lattice != self.source {
            return Err(LatticeError::Mismatch(format!("class on {}, table from {}", d.lattice, self.source)));
        }
        let mut out: Option<Vec<MultiPoly>> = None;
        for (name, c) in source_basis.iter().zip(&d.coeffs) {
            if c.is_zero() {
                continue;
            }
            let img = self.image(name)?;
            let acc = out.get_or_insert_with(|| vec![MultiPoly::zero(); img.len()]);
            for (a, b) in acc.iter_mut().zip(img) {
                *a = &*a + &(c * b);
            }
        }
        let rank = match &out {
            Some(v) => v.len(),
            None => self.entries.first().map_or(0, |t| t.image.len()),
        };
        Ok(SymClass::new(&self.target, out.unwrap_or_else(|| vec![MultiPoly::zero(); rank])))
    }

    /// Restriction of an affine class; `e` is substituted first when given.
    pub fn restrict_aff(
        &self,
        source_basis: &[String],
        d: &DivisorClass,
        e: Option<&Rat>,
    ) -> Result<DivisorClass, LatticeError> {
        let mut s = self.restrict(source_basis, &d.to_sym())?;
        if let Some(e) = e {
            s = s.specialize(e);
        }
        s.to_affine()
    }
}

/// Coefficient vector from (basis name, polynomial literal) pairs.
pub fn poly_class(basis: &[String], terms: &[(&str, &str)]) -> Result<Vec<MultiPoly>, LatticeError> {
    let mut c = vec![MultiPoly::zero(); basis.len()];
    for (name, expr) in terms {
        let i = basis.iter().position(|b| b == name).ok_or_else(|| LatticeError::UnknownBasis(name.to_string()))?;
        let p: MultiPoly = expr.parse().map_err(|e| LatticeError::Invalid(format!("{expr}: {e}")))?;
        c[i] = &c[i] + &p;
    }
    Ok(c)
}
