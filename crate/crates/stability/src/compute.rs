use exactnum::{fmt_rat, int, var_index, MultiPoly, Rat, UPoly};
use lattice::catalog::{self, classes};
use lattice::zariski::v_upper_bound;
use lattice::{
    pseff_threshold_threefold, zariski_decompose, AffineFn2, Curve, Decomposition, DivisorClass, IntersectionForm,
    Region, RestrictionTable, SurfaceLattice, ThreefoldLattice, ZariskiChamber, ZariskiOptions,
};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::flag::{FlagDescriptor, IncidenceProfile, Scenario};
use crate::{Result, StabilityError};

/// One chamber of the threefold family, with P(u)|_S and, for cubic scenarios, the
/// decomposition of f*(P(u)|_S) − vF on S̃.
#[derive(Clone, Debug)]
pub struct Piece {
    pub chamber: ZariskiChamber,
    pub on_s: DivisorClass,
    /// f*(P(u)|_S) − vF, the class decomposed on S̃.
    pub blown_class: Option<DivisorClass>,
    pub blown: Option<Decomposition>,
}

/// Chamber data for one flag (and one value of e in the ruled scenario).
#[derive(Clone, Debug)]
pub struct Setup {
    pub flag: FlagDescriptor,
    pub e: Option<Rat>,
    pub x: ThreefoldLattice,
    pub tau: Rat,
    pub threefold: Decomposition,
    pub surface: SurfaceLattice,
    pub blown_surface: SurfaceLattice,
    pub pieces: Vec<Piece>,
    pub opts: ZariskiOptions,
    k3: Rat,
}

fn table_for(flag: &FlagDescriptor) -> RestrictionTable {
    match (flag.scenario, flag.divisor.as_str()) {
        (Scenario::RuledE, _) => catalog::restriction_to_e(),
        (_, "H'") => catalog::restriction_to_h_prime(),
        _ => catalog::restriction_to_h(),
    }
}

impl Setup {
    pub fn new(flag: &FlagDescriptor, e: Option<Rat>, opts: ZariskiOptions) -> Result<Self> {
        flag.validate()?;
        let e = match (flag.scenario, e, flag.e) {
            (Scenario::RuledE, Some(e), _) => Some(e),
            (Scenario::RuledE, None, Some(e)) => Some(int(e)),
            (Scenario::RuledE, None, None) => {
                return Err(StabilityError::Flag(format!("{}: e is symbolic, pick a value", flag.name)))
            }
            _ => None,
        };
        let (x, s) = flag.threefold()?;
        let family = x.family_minus_u(&s);
        let tau = pseff_threshold_threefold(&x, &family)?;
        let threefold = zariski_decompose(&x, &family, &x.zariski_curves(), &Region::interval(int(0), tau.clone())?, opts)?;
        let surface = match &e {
            Some(e) => catalog::ruled_surface().specialize(e),
            None => catalog::cubic_surface(),
        };
        let blown_surface = catalog::blown_cubic_surface();
        let table = table_for(flag);
        let curves = if flag.scenario.is_cubic() { flag.engine_curves(&blown_surface)? } else { Vec::new() };
        let mut pieces = Vec::new();
        for ch in &threefold.chambers {
            let on_s = table.restrict_aff(&x.basis, &ch.p, e.as_ref())?;
            let (blown_class, blown) = if flag.scenario.is_cubic() {
                let mut d = catalog::blowup_pullback().restrict_aff(&surface.basis, &on_s, None)?;
                d.coeffs[7] = &d.coeffs[7] - &AffineFn2::v();
                let top = v_upper_bound(&blown_surface, &d, &classes::f(), &catalog::blown_anticanonical())?;
                let region = Region::new(ch.region.u0.clone(), ch.region.u1.clone(), AffineFn2::zero(), top)?;
                let dec = zariski_decompose(&blown_surface, &d, &curves, &region, opts)?;
                (Some(d), Some(dec))
            } else {
                (None, None)
            };
            pieces.push(Piece { chamber: ch.clone(), on_s, blown_class, blown });
        }
        let k3 = x.cube(&x.anticanonical());
        Ok(Setup { flag: flag.clone(), e, x, tau, threefold, surface, blown_surface, pieces, opts, k3 })
    }

    /// (−K_X)³
    pub fn anticanonical_degree(&self) -> &Rat {
        &self.k3
    }

    /// The same data with every chamber cut at the given u values.
    pub fn refined(&self, cuts: &[Rat]) -> Setup {
        let split = |c: &ZariskiChamber| -> Vec<ZariskiChamber> {
            c.region.split_u(cuts).into_iter().map(|r| ZariskiChamber { region: r, ..c.clone() }).collect()
        };
        let split_dec = |d: &Decomposition| Decomposition {
            chambers: d.chambers.iter().flat_map(split).collect(),
            not_pseff: d.not_pseff.clone(),
        };
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for ch in split(&p.chamber) {
                let blown = p.blown.as_ref().map(|b| {
                    let d = split_dec(b);
                    Decomposition {
                        chambers: d.chambers.into_iter().filter(|c| c.region.u0 >= ch.region.u0 && c.region.u1 <= ch.region.u1).collect(),
                        not_pseff: Vec::new(),
                    }
                });
                pieces.push(Piece { chamber: ch, on_s: p.on_s.clone(), blown_class: p.blown_class.clone(), blown });
            }
        }
        Setup { threefold: split_dec(&self.threefold), pieces, ..self.clone() }
    }

    /// Σ_D n_D(u)·w(D) over the negative part of the threefold chamber, where `w` weights each divisor.
    fn weighted_n(&self, ch: &ZariskiChamber, w: impl Fn(&str) -> Result<Rat>) -> Result<AffineFn2> {
        let mut acc = AffineFn2::zero();
        for t in &ch.n {
            let k = w(&t.curve)?;
            if !k.is_zero() {
                acc = &acc + &t.coeff.scale(&k);
            }
        }
        Ok(acc)
    }

    /// d̃(u) = mult_P(N(u)|_S) on a threefold chamber.
    pub fn d_tilde(&self, ch: &ZariskiChamber) -> Result<AffineFn2> {
        self.weighted_n(ch, |d| match self.flag.restricted_curve(&self.x, d) {
            Some(c) => Ok(int(self.flag.multiplicity(c))),
            None => Err(StabilityError::Unsupported(format!("no data at P for {d}|_S"))),
        })
    }

    /// ord_O(Ñ′(u)|_F): strict transforms of the restricted divisors through O.
    fn n_prime_at(&self, ch: &ZariskiChamber, o: &IncidenceProfile) -> Result<AffineFn2> {
        self.weighted_n(ch, |d| match self.flag.restricted_curve(&self.x, d) {
            // R̃·F = mult_P(R), all of it at the single point R̃ ∩ F
            Some("R") => Ok(if o.at_r { int(self.flag.multiplicity("R")) } else { Rat::zero() }),
            _ => Err(StabilityError::Unsupported(format!("no data on F for {d}|_S"))),
        })
    }

    fn blown_pieces(&self) -> Result<impl Iterator<Item = (&Piece, &Decomposition)>> {
        if !self.flag.scenario.is_cubic() {
            return Err(StabilityError::Unsupported(format!("{}: no point data on the ruled surface", self.flag.name)));
        }
        Ok(self.pieces.iter().filter_map(|p| p.blown.as_ref().map(|b| (p, b))))
    }
}

fn u_integral(p: &Piece, f: &MultiPoly) -> Result<Rat> {
    let r = Region::interval(p.chamber.region.u0.clone(), p.chamber.region.u1.clone())?;
    let q = r.integrate(f);
    q.to_rat().ok_or_else(|| StabilityError::Unsupported(format!("integral is not a number: {q}")))
}

/// S_X(S) = (1/(−K)³)∫₀^τ vol(−K − uS) du.
pub fn s_divisor(setup: &Setup) -> Result<Rat> {
    let total = setup.threefold.integrate_rat(|c| setup.x.volume(&c.p))?;
    Ok(total / &setup.k3)
}

/// The two terms of S(W;C). `upper_bound` is set when d(u) was replaced by a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveTerm {
    #[serde(with = "exactnum::serde_str::rat")]
    pub d_term: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub vol_term: Rat,
    #[serde(with = "exactnum::serde_str::rat")]
    pub total: Rat,
    pub upper_bound: bool,
}

fn nef_test_class(setup: &Setup) -> Vec<Rat> {
    match setup.flag.scenario {
        // a fibre ℓ
        Scenario::RuledE => vec![int(0), int(1)],
        // e₀
        _ => {
            let mut h = vec![Rat::zero(); 7];
            h[0] = int(1);
            h
        }
    }
}

fn surface_curves(setup: &Setup) -> Result<Vec<Curve>> {
    let lat = &setup.surface;
    match (&setup.flag.scenario, &setup.e) {
        (Scenario::RuledE, Some(e)) => Ok(catalog::ruled_mori_generators(lat, e)?),
        _ => catalog::exceptional_classes(6)
            .into_iter()
            .map(|c| {
                let c: Vec<Rat> = c.into_iter().map(int).collect();
                Curve::on_surface(lat, &lat.format_class(&c).replace(' ', ""), c).map_err(Into::into)
            })
            .collect(),
    }
}

fn ample_class(setup: &Setup) -> Vec<Rat> {
    match &setup.e {
        Some(e) => catalog::ruled_ample_class(e),
        None => {
            let mut k = vec![int(-1); 7];
            k[0] = int(3);
            k
        }
    }
}

/// S(W;C) = (3/(−K)³)[∫ d(u)(P(u)|_S)² du + ∫∫ vol(P(u)|_S − vC) dv du], with
/// d(u) = ord_C(N(u)|_S) bounded through the flag's `curve_orders`.
pub fn s_curve(setup: &Setup, c: &[Rat]) -> Result<CurveTerm> {
    let lat = &setup.surface;
    if c.len() != lat.rank() {
        return Err(StabilityError::Flag(format!("curve {c:?} does not live on {}", lat.name)));
    }
    let nef = nef_test_class(setup);
    let c_nef = lat.pair_rat(c, &nef)?;
    let ample = ample_class(setup);
    if !c_nef.is_positive() || !lat.pair_rat(c, &ample)?.is_positive() {
        return Err(StabilityError::Flag(format!("{} is not the class of an effective curve", lat.format_class(c))));
    }
    let mut upper = false;
    let mut d_term = Rat::zero();
    let mut vol_term = Rat::zero();
    let curves = surface_curves(setup)?;
    for p in &setup.pieces {
        let d = setup.weighted_n(&p.chamber, |name| {
            let bound = setup.flag.curve_orders.get(name).ok_or_else(|| {
                StabilityError::Flag(format!("{}: no bound for ord_C({name}|_S)", setup.flag.name))
            })?;
            // D|_S − kC effective and the test class nef force k ≤ (D|_S·A)/(C·A)
            let x = &setup.x;
            let on_s = table_for(&setup.flag).restrict_aff(&x.basis, &DivisorClass::constant(&x.name, &x.named(name)?), setup.e.as_ref())?;
            let derived = on_s.eval(&Rat::zero(), &Rat::zero());
            let derived = lat.pair_rat(&derived, &nef)? / &c_nef;
            if &derived > bound {
                return Err(StabilityError::Flag(format!(
                    "ord_C({name}|_S) <= {} cannot be confirmed, the lattice only gives {}",
                    fmt_rat(bound),
                    fmt_rat(&derived)
                )));
            }
            Ok(bound.clone())
        })?;
        if !d.is_zero() {
            upper = true;
        }
        let sq = lat.volume(&p.on_s);
        d_term += u_integral(p, &(&d.to_poly() * &sq))?;

        let mut fam = p.on_s.clone();
        for (k, ck) in c.iter().enumerate() {
            fam.coeffs[k] = &fam.coeffs[k] - &AffineFn2::v().scale(ck);
        }
        let top = v_upper_bound(lat, &fam, c, &ample)?;
        let z = Rat::zero();
        let (u0, u1) = (&p.chamber.region.u0, &p.chamber.region.u1);
        if top.eval(u0, &z).is_negative() || top.eval(u1, &z).is_negative() {
            return Err(StabilityError::Flag("P(u)|_S is not pseudo-effective".into()));
        }
        let region = Region::new(u0.clone(), u1.clone(), AffineFn2::zero(), top)?;
        let dec = zariski_decompose(lat, &fam, &curves, &region, setup.opts)?;
        vol_term += dec.integrate_rat(|ch| lat.volume(&ch.p))?;
    }
    let w = int(3) / &setup.k3;
    let d_term = d_term * &w;
    let vol_term = vol_term * &w;
    Ok(CurveTerm { total: &d_term + &vol_term, d_term, vol_term, upper_bound: upper })
}

/// S(W;C) as a polynomial in e, interpolated from exact values at the given e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicCurveTerm {
    #[serde(with = "exactnum::serde_str::poly")]
    pub d_term: MultiPoly,
    #[serde(with = "exactnum::serde_str::poly")]
    pub vol_term: MultiPoly,
    #[serde(with = "exactnum::serde_str::poly")]
    pub total: MultiPoly,
    /// Sample points beyond those needed to fix the polynomial, all of which it matches.
    pub spare_nodes: usize,
    pub samples: Vec<(i64, CurveTerm)>,
    pub upper_bound: bool,
}

fn fit(points: &[(Rat, Rat)]) -> Result<(UPoly, usize)> {
    for k in 1..=points.len() {
        let p = UPoly::interpolate(&points[..k]).map_err(|e| StabilityError::Unsupported(e.to_string()))?;
        if points[k..].iter().all(|(x, y)| &p.eval(x) == y) {
            return Ok((p, points.len() - k));
        }
    }
    unreachable!("interpolation through every node matches them all")
}

pub fn s_curve_symbolic(flag: &FlagDescriptor, es: &[i64], opts: ZariskiOptions) -> Result<SymbolicCurveTerm> {
    let c = flag.curve.clone().ok_or_else(|| StabilityError::Flag(format!("{}: no curve of interest", flag.name)))?;
    if es.is_empty() {
        return Err(StabilityError::Flag("no values of e to sample".into()));
    }
    let eval = |e: &i64| -> Result<(i64, CurveTerm)> {
        let mut f = flag.clone();
        f.e = Some(*e);
        Ok((*e, s_curve(&Setup::new(&f, None, opts)?, &c)?))
    };
    #[cfg(feature = "parallel")]
    let samples: Vec<(i64, CurveTerm)> = {
        use rayon::prelude::*;
        es.par_iter().map(eval).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let samples: Vec<(i64, CurveTerm)> = es.iter().map(eval).collect::<Result<_>>()?;
    let ev = var_index("e").expect("e is a variable");
    let series = |g: fn(&CurveTerm) -> &Rat| -> Result<(MultiPoly, usize)> {
        let pts: Vec<(Rat, Rat)> = samples.iter().map(|(e, t)| (int(*e), g(t).clone())).collect();
        let (p, spare) = fit(&pts)?;
        Ok((MultiPoly::from_upoly(&p, ev), spare))
    };
    let (d_term, s1) = series(|t| &t.d_term)?;
    let (vol_term, s2) = series(|t| &t.vol_term)?;
    let (total, s3) = series(|t| &t.total)?;
    Ok(SymbolicCurveTerm {
        d_term,
        vol_term,
        total,
        spare_nodes: s1.min(s2).min(s3),
        upper_bound: samples.iter().any(|(_, t)| t.upper_bound),
        samples,
    })
}

/// S(W;F) = (3/(−K)³)[∫ d̃(u)(P(u)|_S)² du + ∫∫ vol(f*(P(u)|_S) − vF) dv du].
pub fn s_exceptional(setup: &Setup) -> Result<Rat> {
    let mut total = Rat::zero();
    for (p, dec) in setup.blown_pieces()? {
        let dt = setup.d_tilde(&p.chamber)?;
        if !dt.is_zero() {
            total += u_integral(p, &(&dt.to_poly() * &setup.surface.volume(&p.on_s)))?;
        }
        total += dec.integrate_rat(|c| setup.blown_surface.volume(&c.p))?;
    }
    Ok(total * int(3) / &setup.k3)
}

/// The F_O correction alone: (6/(−K)³)∫∫ (P·F)·ord_O(Ñ′(u)|_F + Ñ(u,v)|_F).
pub fn f_correction(setup: &Setup, o: &IncidenceProfile) -> Result<Rat> {
    setup.flag.check_profile(o)?;
    let f = setup.blown_surface.dual(&classes::f())?;
    let mut total = Rat::zero();
    for (p, dec) in setup.blown_pieces()? {
        let np = setup.n_prime_at(&p.chamber, o)?.to_poly();
        total += dec.integrate_rat(|c| {
            let mut ord = np.clone();
            for t in &c.n {
                let k = o.local(&t.curve);
                if k != 0 {
                    ord = &ord + &t.coeff.scale(&int(k)).to_poly();
                }
            }
            &c.p.apply(&f).to_poly() * &ord
        })?;
    }
    Ok(total * int(6) / &setup.k3)
}

/// S(W;O) = (3/(−K)³)∫∫ (P·F)² dv du + F_O.
pub fn s_point(setup: &Setup, o: &IncidenceProfile) -> Result<Rat> {
    let corr = f_correction(setup, o)?;
    let f = setup.blown_surface.dual(&classes::f())?;
    let mut base = Rat::zero();
    for (_, dec) in setup.blown_pieces()? {
        base += dec.integrate_rat(|c| {
            let pf = c.p.apply(&f).to_poly();
            &pf * &pf
        })?;
    }
    Ok(base * int(3) / &setup.k3 + corr)
}
