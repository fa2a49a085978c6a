use exactnum::linalg::{inverse, is_negative_definite};
use exactnum::{fmt_rat, MultiPoly, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn2;
use crate::region::Region;
use crate::surface::{bilinear, DivisorClass, SurfaceLattice};
use crate::threefold::ThreefoldLattice;
use crate::LatticeError;

/// Something that can compute the top self-intersection of a class.
pub trait IntersectionForm: Sync {
    fn lattice_name(&self) -> &str;
    fn basis(&self) -> &[String];
    /// P² on a surface, P³ on a threefold, as a polynomial in (u, v).
    fn volume(&self, p: &DivisorClass) -> MultiPoly;
    fn volume_at(&self, p: &[Rat]) -> Rat;
}

impl IntersectionForm for SurfaceLattice {
    fn lattice_name(&self) -> &str {
        &self.name
    }
    fn basis(&self) -> &[String] {
        &self.basis
    }
    fn volume(&self, p: &DivisorClass) -> MultiPoly {
        self.pair(p, p).expect("class on this lattice")
    }
    fn volume_at(&self, p: &[Rat]) -> Rat {
        bilinear(&self.rat_gram().expect("numeric Gram"), p, p)
    }
}

impl IntersectionForm for ThreefoldLattice {
    fn lattice_name(&self) -> &str {
        &self.name
    }
    fn basis(&self) -> &[String] {
        &self.basis
    }
    fn volume(&self, p: &DivisorClass) -> MultiPoly {
        let s = p.to_sym();
        self.triple_product(&s, &s, &s).expect("class on this lattice")
    }
    fn volume_at(&self, p: &[Rat]) -> Rat {
        self.cube(p)
    }
}

/// A negative-part candidate: the class subtracted, and the covector D ↦ D·C that
/// decides when it must be subtracted. On a surface the covector is Gram·class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    #[serde(with = "exactnum::serde_str::rat_vec")]
    pub class: Vec<Rat>,
    #[serde(with = "exactnum::serde_str::rat_vec")]
    pub dual: Vec<Rat>,
}

impl Curve {
    pub fn new(name: &str, class: Vec<Rat>, dual: Vec<Rat>) -> Self {
        Curve { name: name.into(), class, dual }
    }

    pub fn on_surface(lat: &SurfaceLattice, name: &str, class: Vec<Rat>) -> Result<Self, LatticeError> {
        if class.len() != lat.rank() {
            return Err(LatticeError::Mismatch(format!("{name} has {} coefficients", class.len())));
        }
        let dual = lat.dual(&class)?;
        Ok(Curve::new(name, class, dual))
    }

    pub fn pairing(&self, d: &DivisorClass) -> AffineFn2 {
        d.apply(&self.dual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegTerm {
    pub curve: String,
    pub coeff: AffineFn2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiChamber {
    pub region: Region,
    pub p: DivisorClass,
    pub n: Vec<NegTerm>,
}

impl ZariskiChamber {
    pub fn n_coeff(&self, curve: &str) -> AffineFn2 {
        self.n.iter().find(|t| t.curve == curve).map(|t| t.coeff.clone()).unwrap_or_default()
    }

    /// Sum of the N coefficients over the named curves.
    pub fn n_sum(&self, curves: &[&str]) -> AffineFn2 {
        curves.iter().fold(AffineFn2::zero(), |acc, c| &acc + &self.n_coeff(c))
    }

    pub fn support(&self) -> Vec<&str> {
        self.n.iter().map(|t| t.curve.as_str()).collect()
    }

    pub fn volume(&self, form: &dyn IntersectionForm) -> MultiPoly {
        form.volume(&self.p)
    }

    fn key(&self) -> (&DivisorClass, &[NegTerm]) {
        (&self.p, &self.n)
    }

    pub fn describe(&self, basis: &[String]) -> String {
        let n: Vec<String> = self.n.iter().map(|t| format!("({})*{}", t.coeff, t.curve)).collect();
        format!(
            "{}: P = {}; N = {}",
            self.region,
            self.p.format(basis),
            if n.is_empty() { "0".to_string() } else { n.join(" + ") }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotPseff {
    pub region: Region,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub chambers: Vec<ZariskiChamber>,
    pub not_pseff: Vec<NotPseff>,
}

impl Decomposition {
    /// The chamber containing (u, v); ties on walls go to the first in order.
    pub fn chamber_at(&self, u: &Rat, v: &Rat) -> Option<&ZariskiChamber> {
        self.chambers.iter().find(|c| c.region.contains(u, v))
    }

    /// Σ over chambers of ∫∫ f(chamber) du dv.
    pub fn integrate(&self, f: impl Fn(&ZariskiChamber) -> MultiPoly) -> MultiPoly {
        self.chambers.iter().fold(MultiPoly::zero(), |acc, c| &acc + &c.region.integrate(&f(c)))
    }

    pub fn integrate_rat(&self, f: impl Fn(&ZariskiChamber) -> MultiPoly) -> Result<Rat, LatticeError> {
        let p = self.integrate(f);
        p.to_rat().ok_or_else(|| LatticeError::NotAffine(format!("integral is not a number: {p}")))
    }

    pub fn is_pseff_somewhere(&self) -> bool {
        !self.chambers.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZariskiOptions {
    /// Recurse over split pieces with rayon (needs the `parallel` feature).
    pub parallel: bool,
    /// Merge adjacent chambers with identical data.
    pub merge: bool,
}

impl Default for ZariskiOptions {
    fn default() -> Self {
        ZariskiOptions { parallel: cfg!(feature = "parallel"), merge: true }
    }
}

enum Piece {
    Chamber(ZariskiChamber),
    Bad(NotPseff),
}

struct Ctx<'a> {
    d: &'a DivisorClass,
    curves: &'a [Curve],
    /// pm[i][j] = class_j · curve_i
    pm: Vec<Vec<Rat>>,
    b: Vec<AffineFn2>,
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    opts: ZariskiOptions,
}

/// Parametric Zariski decomposition of `d` over `region`, with negative parts drawn from `curves`.
pub fn zariski_decompose(
    form: &dyn IntersectionForm,
    d: &DivisorClass,
    curves: &[Curve],
    region: &Region,
    opts: ZariskiOptions,
) -> Result<Decomposition, LatticeError> {
    let rank = form.basis().len();
    if d.lattice != form.lattice_name() || d.rank() != rank {
        return Err(LatticeError::Mismatch(format!("{} vs {}", d.lattice, form.lattice_name())));
    }
    if let Some(c) = curves.iter().find(|c| c.class.len() != rank || c.dual.len() != rank) {
        return Err(LatticeError::Mismatch(format!("curve {} has the wrong rank", c.name)));
    }
    let pm = curves
        .iter()
        .map(|ci| curves.iter().map(|cj| cj.class.iter().zip(&ci.dual).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let b = curves.iter().map(|c| c.pairing(d)).collect();
    let ctx = Ctx { d, curves, pm, b, opts };
    let pieces = recurse(&ctx, region.clone(), Vec::new());
    let mut chambers = Vec::new();
    let mut not_pseff = Vec::new();
    for p in pieces {
        match p {
            Piece::Chamber(c) => chambers.push(c),
            Piece::Bad(b) => not_pseff.push(b),
        }
    }
    if opts.merge {
        chambers = merge_by(chambers, |a, b| a.key() == b.key(), |c| &c.region, |c, r| ZariskiChamber { region: r, ..c });
        not_pseff = merge_by(not_pseff, |a, b| a.reason == b.reason, |b| &b.region, |b, r| NotPseff { region: r, ..b });
    }
    chambers.sort_by_key(|a| a.region.order_key());
    not_pseff.sort_by_key(|a| a.region.order_key());
    Ok(Decomposition { chambers, not_pseff })
}

fn fan_out(ctx: &Ctx, pieces: Vec<Region>, support: &[usize]) -> Vec<Piece> {
    #[cfg(feature = "parallel")]
    if ctx.opts.parallel && pieces.len() > 1 {
        use rayon::prelude::*;
        return pieces.into_par_iter().flat_map_iter(|r| recurse(ctx, r, support.to_vec())).collect();
    }
    pieces.into_iter().flat_map(|r| recurse(ctx, r, support.to_vec())).collect()
}

fn names(ctx: &Ctx, s: &[usize]) -> String {
    let v: Vec<&str> = s.iter().map(|&i| ctx.curves[i].name.as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

fn recurse(ctx: &Ctx, region: Region, mut support: Vec<usize>) -> Vec<Piece> {
    loop {
        let mut x: Vec<AffineFn2> = Vec::new();
        if !support.is_empty() {
            let a: Vec<Vec<Rat>> =
                support.iter().map(|&i| support.iter().map(|&j| ctx.pm[i][j].clone()).collect()).collect();
            if !is_negative_definite(&a) {
                let reason = format!("support {} is not negative definite", names(ctx, &support));
                return vec![Piece::Bad(NotPseff { region, reason })];
            }
            let inv = inverse(&mut a.clone()).expect("negative definite matrices are invertible");
            x = (0..support.len())
                .map(|j| {
                    (0..support.len())
                        .fold(AffineFn2::zero(), |acc, k| &acc + &ctx.b[support[k]].scale(&inv[j][k]))
                })
                .collect();
            for xj in &x {
                if region.signs(xj).mixed() {
                    let pieces = region.split(xj);
                    return fan_out(ctx, pieces, &support);
                }
            }
            if let Some(j) = x.iter().position(|xj| region.signs(xj).somewhere_negative()) {
                let reason = format!("negative coefficient of {}", ctx.curves[support[j]].name);
                return vec![Piece::Bad(NotPseff { region, reason })];
            }
        }
        let mut p = ctx.d.clone();
        for (xj, &j) in x.iter().zip(&support) {
            p = p.add_scaled(&ctx.curves[j].class, &-xj);
        }
        let mut neg = Vec::new();
        for (i, c) in ctx.curves.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let s = region.signs(&c.pairing(&p));
            if s.mixed() {
                let pieces = region.split(&c.pairing(&p));
                return fan_out(ctx, pieces, &support);
            }
            if s.neg {
                neg.push(i);
            }
        }
        if neg.is_empty() {
            let n = x
                .into_iter()
                .zip(&support)
                .filter(|(xj, _)| !xj.is_zero())
                .map(|(coeff, &j)| NegTerm { curve: ctx.curves[j].name.clone(), coeff })
                .collect::<Vec<_>>();
            let mut n = n;
            n.sort_by_key(|t| ctx.curves.iter().position(|c| c.name == t.curve));
            return vec![Piece::Chamber(ZariskiChamber { region, p, n })];
        }
        support.extend(neg);
        support.sort();
    }
}

/// Repeatedly glue pairs with equal keys whose regions share a full edge.
fn merge_by<T: Clone>(
    mut items: Vec<T>,
    same: impl Fn(&T, &T) -> bool,
    region: impl Fn(&T) -> &Region,
    rebuild: impl Fn(T, Region) -> T,
) -> Vec<T> {
    'outer: loop {
        for i in 0..items.len() {
            for j in 0..items.len() {
                if i == j || !same(&items[i], &items[j]) {
                    continue;
                }
                if let Some(r) = glue(region(&items[i]), region(&items[j])) {
                    let b = items.remove(i.max(j));
                    let a = items.remove(i.min(j));
                    let keep = if i < j { a } else { b };
                    items.push(rebuild(keep, r));
                    continue 'outer;
                }
            }
        }
        return items;
    }
}

/// Union of `a` (below or left) and `b` when it is again a region.
fn glue(a: &Region, b: &Region) -> Option<Region> {
    if a.flat != b.flat {
        return None;
    }
    if !a.flat && a.u0 == b.u0 && a.u1 == b.u1 && a.hi == b.lo {
        return Some(Region { hi: b.hi.clone(), ..a.clone() });
    }
    if a.lo == b.lo && a.hi == b.hi && a.u1 == b.u0 {
        return Some(Region { u1: b.u1.clone(), ..a.clone() });
    }
    None
}

/// Checks the chamber axioms exactly on the region's vertices (all data is affine).
pub fn check_chamber(d: &DivisorClass, curves: &[Curve], ch: &ZariskiChamber) -> Result<(), String> {
    let r = &ch.region;
    let find = |name: &str| curves.iter().find(|c| c.name == name).ok_or(format!("unknown curve {name}"));
    let mut sum = ch.p.clone();
    for t in &ch.n {
        sum = sum.add_scaled(&find(&t.curve)?.class, &t.coeff);
        if r.signs(&t.coeff).neg {
            return Err(format!("negative coefficient {} of {} on {r}", t.coeff, t.curve));
        }
        let pc = find(&t.curve)?.pairing(&ch.p);
        if !pc.is_zero() {
            return Err(format!("P.{} = {pc} is not zero on {r}", t.curve));
        }
    }
    if &sum != d {
        return Err(format!("P + N != D on {r}"));
    }
    for c in curves {
        if r.signs(&c.pairing(&ch.p)).neg {
            return Err(format!("P.{} < 0 somewhere on {r}", c.name));
        }
    }
    let supp: Vec<&Curve> = ch.n.iter().map(|t| find(&t.curve)).collect::<Result<_, _>>()?;
    if !supp.is_empty() {
        let a: Vec<Vec<Rat>> = supp
            .iter()
            .map(|ci| supp.iter().map(|cj| cj.class.iter().zip(&ci.dual).map(|(x, y)| x * y).sum()).collect())
            .collect();
        if !is_negative_definite(&a) {
            return Err(format!("support of N is not negative definite on {r}"));
        }
    }
    Ok(())
}

/// Threshold of a threefold family: D(u) = α(u)E + β(u)E′ is pseudo-effective while α, β ≥ 0.
pub fn pseff_threshold_threefold(lat: &ThreefoldLattice, family: &DivisorClass) -> Result<Rat, LatticeError> {
    let (alpha, beta) = lat.in_pseff_basis(family);
    let z = Rat::zero();
    let mut tau: Option<Rat> = None;
    for c in [&alpha, &beta] {
        if !c.cv.is_zero() {
            return Err(LatticeError::NotAffine(format!("family depends on v: {c}")));
        }
        if c.eval(&z, &z) < z {
            return Err(LatticeError::NeverPseff(format!("coefficient {c} is negative at u = 0")));
        }
        if c.cu < z {
            let root = -&c.c0 / &c.cu;
            tau = Some(match tau {
                Some(t) if t <= root => t,
                _ => root,
            });
        }
    }
    tau.ok_or_else(|| LatticeError::NeverPseff("family stays pseudo-effective for all u".into()))
}

/// Piecewise-affine upper boundary of the pseudo-effective part: (u₀, u₁, t(u)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub pieces: Vec<ThresholdPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdPiece {
    #[serde(with = "exactnum::serde_str::rat")]
    pub u0: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub u1: Rat,
    pub t: AffineFn2,
}

impl Threshold {
    pub fn eval(&self, u: &Rat) -> Option<Rat> {
        self.pieces.iter().find(|p| &p.u0 <= u && u <= &p.u1).map(|p| p.t.eval(u, &Rat::zero()))
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.pieces.iter().map(|p| format!("{} on [{}, {}]", p.t, fmt_rat(&p.u0), fmt_rat(&p.u1))).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Largest v with a valid decomposition, as a function of u, read off the chambers.
pub fn pseff_threshold_surface(dec: &Decomposition) -> Result<Threshold, LatticeError> {
    if dec.chambers.is_empty() {
        return Err(LatticeError::NeverPseff("no chamber has a decomposition".into()));
    }
    let mut cuts: Vec<Rat> = dec.chambers.iter().flat_map(|c| [c.region.u0.clone(), c.region.u1.clone()]).collect();
    cuts.sort();
    cuts.dedup();
    let z = Rat::zero();
    let mut pieces: Vec<ThresholdPiece> = Vec::new();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / exactnum::int(2);
        let best = dec
            .chambers
            .iter()
            .filter(|c| c.region.u0 <= w[0] && c.region.u1 >= w[1])
            .map(|c| &c.region.hi)
            .max_by(|a, b| a.eval(&mid, &z).cmp(&b.eval(&mid, &z)));
        let Some(t) = best else { continue };
        match pieces.last_mut() {
            Some(last) if last.u1 == w[0] && &last.t == t => last.u1 = w[1].clone(),
            _ => pieces.push(ThresholdPiece { u0: w[0].clone(), u1: w[1].clone(), t: t.clone() }),
        }
    }
    Ok(Threshold { pieces })
}

/// For D(u, v) = D₀(u) − v·C and a nef class A with C·A > 0: D pseudo-effective forces
/// v ≤ (D₀·A)/(C·A). Used as the top of the search region.
pub fn v_upper_bound(lat: &SurfaceLattice, d: &DivisorClass, c: &[Rat], a: &[Rat]) -> Result<AffineFn2, LatticeError> {
    let ca = lat.pair_rat(c, a)?;
    if ca <= Rat::zero() {
        return Err(LatticeError::Invalid("the subtracted class must meet the nef class positively".into()));
    }
    let d0 = DivisorClass::new(&d.lattice, d.coeffs.iter().map(|x| AffineFn2::in_u(x.c0.clone(), x.cu.clone())).collect());
    Ok(d0.apply(&lat.dual(a)?).scale(&(Rat::from_integer(1.into()) / ca)))
}
