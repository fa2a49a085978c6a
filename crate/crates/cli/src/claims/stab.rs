use exactnum::{fmt_rat, int, rat, CycloNum, MultiPoly, Rat};
use lattice::catalog::{self, restriction_to_e, restriction_to_h, restriction_to_h_prime};
use lattice::{
    check_chamber, pseff_threshold_threefold, zariski_decompose, Region, RestrictionTable, SurfaceLattice, SymClass,
    ThreefoldLattice, ZariskiOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stability::{catalogue, evaluate_all, s_curve, s_curve_symbolic, EvalOptions, FlagDescriptor, SReport, Setup};

use super::fail;
use crate::{Computed, Result, RunOptions};

fn zopts(opts: &RunOptions) -> ZariskiOptions {
    ZariskiOptions { parallel: opts.parallel && cfg!(feature = "parallel"), ..ZariskiOptions::default() }
}

fn flags(opts: &RunOptions) -> Vec<FlagDescriptor> {
    let mut cat = catalogue();
    if let Some(s) = opts.config.strict {
        for f in &mut cat {
            f.strict = s;
        }
    }
    cat
}

fn find<'a>(reports: &'a [SReport], flag: &str) -> Result<&'a SReport> {
    reports.iter().find(|r| r.flag == flag).ok_or_else(|| fail(format!("no report for {flag}")))
}

fn point(r: &SReport, profile: &str) -> Result<Rat> {
    let id = format!("{}/O:{profile}", r.flag);
    r.s_points.iter().find(|v| v.id == id).map(|v| v.value.clone()).ok_or_else(|| fail(format!("no value {id}")))
}

fn exceptional(r: &SReport) -> Result<Rat> {
    r.s_exceptional.as_ref().map(|v| v.value.clone()).ok_or_else(|| fail(format!("{} has no S(W;F)", r.flag)))
}

pub fn produce(opts: &RunOptions) -> Result<Vec<Computed>> {
    let cat = flags(opts);
    let flag = |n: &str| cat.iter().find(|f| f.name == n).cloned().ok_or_else(|| fail(format!("unknown flag {n}")));
    let z = zopts(opts);
    let eopts = EvalOptions { strict: opts.config.strict, e_values: opts.config.e_values.clone(), zariski: z };
    let reports = evaluate_all(&cat, &eopts).map_err(fail)?;
    let mut out = Vec::new();
    let r = |n: &str| find(&reports, n);

    out.push(Computed::new("s_divisor_H", fmt_rat(&r("no-line-p-off-e-prime")?.s_divisor.value)));
    out.push(Computed::new("s_divisor_H_prime", fmt_rat(&r("no-line-h-prime")?.s_divisor.value)));
    out.push(Computed::new("s_divisor_E", fmt_rat(&r("ruled-e-2-conic")?.s_divisor.value)));
    out.push(Computed::new("tau_H", fmt_rat(&r("no-line-p-off-e-prime")?.tau)));
    out.push(Computed::new("tau_E", fmt_rat(&r("ruled-e-2-conic")?.tau)));

    out.extend(volumes(z)?);

    // the symbolic fit always uses the full default sample; per-e totals follow the config
    let ruled = flag("ruled-c0")?;
    let sym = s_curve_symbolic(&ruled, &crate::Config::default().e_values, z).map_err(fail)?;
    let d = sym.d_term.to_rat().ok_or_else(|| fail("d-term depends on e"))?;
    out.push(Computed::new("ruled_d_term", fmt_rat(&d)));
    out.push(Computed::new("ruled_total_symbolic", &sym.total));
    let samples = if opts.config.e_values == crate::Config::default().e_values {
        sym.samples.clone()
    } else {
        s_curve_symbolic(&ruled, &opts.config.e_values, z).map_err(fail)?.samples
    };
    for (e, t) in &samples {
        out.push(Computed::new(format!("ruled_total[e={e}]"), fmt_rat(&t.total)));
    }
    let conic = Setup::new(&flag("ruled-e-2-conic")?, None, z).map_err(fail)?;
    let t = s_curve(&conic, &[int(2), int(-2)]).map_err(fail)?;
    out.push(Computed::new("ruled_e_m2_vol_term", fmt_rat(&t.vol_term)));
    out.push(Computed::new("ruled_e_m2_d_term", fmt_rat(&t.d_term)));
    out.push(Computed::new("ruled_e_m2_total", fmt_rat(&t.total)));

    let on = r("no-line-p-on-e-prime")?;
    let off = r("no-line-p-off-e-prime")?;
    out.push(Computed::new("s_exc_P_on_E_prime", fmt_rat(&exceptional(on)?)));
    out.push(Computed::new("s_exc_P_off_E_prime", fmt_rat(&exceptional(off)?)));
    for (id, p) in [("generic", "generic"), ("on_L", "on-L"), ("on_T", "on-T")] {
        out.push(Computed::new(format!("s_point_{id}"), fmt_rat(&point(off, p)?)));
    }
    out.push(Computed::new("s_point_R_and_L", fmt_rat(&point(on, "R-and-L")?)));
    let rt = point(on, "R-and-T")?;
    out.push(Computed::new("s_point_R_and_T", fmt_rat(&rt)));
    let addend = &rt - point(on, "on-T")?;
    let printed = rat(1, 241) + rat(63, 80) + rat(5, 96) * int(2);
    out.push(Computed::new("s_point_R_and_T_r_addend", fmt_rat(&addend)).with_note(format!(
        "engine: {} + 63/80 + 2*5/96 = {}; printed addend: 1/241 + 63/80 + 2*5/96 = {}",
        fmt_rat(&addend),
        fmt_rat(&rt),
        fmt_rat(&printed)
    )));

    for t in ["tangent", "transverse"] {
        out.push(Computed::new(format!("s_exc_line_{t}_P_on_E_prime"), fmt_rat(&exceptional(r(&format!("line-{t}-p-on-e-prime"))?)?)));
        out.push(Computed::new(format!("s_exc_line_{t}_P_off_E_prime"), fmt_rat(&exceptional(r(&format!("line-{t}-p-off-e-prime"))?)?)));
    }
    let line = r("line-tangent-p-on-e-prime")?;
    for v in &line.s_points {
        let profile = v.id.rsplit("/O:").next().unwrap_or_default();
        let c = Computed::new(format!("s_point_line_{profile}"), fmt_rat(&v.value));
        out.push(if v.notes.is_empty() { c } else { c.with_note(v.notes.join("; ")) });
    }

    for rep in &reports {
        let c = Computed::new(format!("verdict_{}", rep.flag), rep.verdict.pass());
        let failing: Vec<&str> = rep.verdict.bounds.iter().flat_map(|b| b.failing.iter().map(String::as_str)).collect();
        out.push(if failing.is_empty() { c } else { c.with_note(failing.join("; ")) });
    }

    out.push(field_axioms(1000, 24));
    out.push(chamber_axioms(&cat, opts)?);
    out.extend(restriction_compatibility()?);
    Ok(out)
}

fn volumes(z: ZariskiOptions) -> Result<Vec<Computed>> {
    let x = ThreefoldLattice::standard();
    let mut out = Vec::new();
    for (tag, k) in [("H", 0), ("E", 1)] {
        let fam = x.family_minus_u(&x.class(k));
        let tau = pseff_threshold_threefold(&x, &fam).map_err(fail)?;
        let dec = zariski_decompose(&x, &fam, &x.zariski_curves(), &Region::interval(int(0), tau).map_err(fail)?, z)
            .map_err(fail)?;
        out.push(Computed::new(format!("vol_{tag}_chambers"), dec.chambers.len()));
        for (i, c) in dec.chambers.iter().enumerate() {
            let region = format!("u in [{}, {}]", fmt_rat(&c.region.u0), fmt_rat(&c.region.u1));
            out.push(Computed::new(format!("vol_{tag}_chamber_{}", i + 1), c.volume(&x)).with_note(region));
        }
        let total = dec.integrate_rat(|c| c.volume(&x)).map_err(fail)?;
        out.push(Computed::new(format!("vol_{tag}_integral"), fmt_rat(&total)));
    }
    Ok(out)
}

/// Associativity, commutativity, distributivity, additive and multiplicative inverses on seeded
/// random triples.
pub fn field_axioms(cases: usize, seed: u64) -> Computed {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elt = |rng: &mut ChaCha8Rng| {
        let c: [Rat; 8] = std::array::from_fn(|_| rat(rng.gen_range(-9..10), rng.gen_range(1..6)));
        CycloNum::from_coeffs(&c)
    };
    let mut bad = 0;
    for _ in 0..cases {
        let (a, b, c) = (elt(&mut rng), elt(&mut rng), elt(&mut rng));
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &(&a - &b) + &b == a
            && (a.is_zero() || (&a * &a.inv().unwrap()).is_one());
        bad += !ok as usize;
    }
    Computed::new("field_axioms", bad == 0).with_note(format!("{cases} triples, {bad} failures"))
}

/// check_chamber on every chamber the stability setups emit, threefold and blown-up surface.
fn chamber_axioms(cat: &[FlagDescriptor], opts: &RunOptions) -> Result<Computed> {
    let z = zopts(opts);
    let mut jobs: Vec<(FlagDescriptor, Option<Rat>)> = Vec::new();
    for f in cat {
        if f.e.is_none() && f.name == "ruled-c0" {
            jobs.extend(opts.config.e_values.iter().map(|e| (f.clone(), Some(int(*e)))));
        } else {
            jobs.push((f.clone(), None));
        }
    }
    let check = |(f, e): &(FlagDescriptor, Option<Rat>)| -> Result<(usize, Vec<String>)> {
        let s = Setup::new(f, e.clone(), z).map_err(fail)?;
        let (x, cls) = f.threefold().map_err(fail)?;
        let fam = x.family_minus_u(&cls);
        let mut n = 0;
        let mut errs = Vec::new();
        for c in &s.threefold.chambers {
            n += 1;
            if let Err(m) = check_chamber(&fam, &x.zariski_curves(), c) {
                errs.push(format!("{}: {m}", f.name));
            }
        }
        if f.scenario.is_cubic() {
            let curves = s.flag.engine_curves(&s.blown_surface).map_err(fail)?;
            for p in &s.pieces {
                let (Some(d), Some(dec)) = (&p.blown_class, &p.blown) else { continue };
                for c in &dec.chambers {
                    n += 1;
                    if let Err(m) = check_chamber(d, &curves, c) {
                        errs.push(format!("{}: {m}", f.name));
                    }
                }
            }
        }
        Ok((n, errs))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<(usize, Vec<String>)>> = if opts.parallel {
        use rayon::prelude::*;
        jobs.par_iter().map(check).collect()
    } else {
        jobs.iter().map(check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(usize, Vec<String>)>> = jobs.iter().map(check).collect();
    let mut n = 0;
    let mut errs = Vec::new();
    for r in results {
        let (k, e) = r?;
        n += k;
        errs.extend(e);
    }
    let note = if errs.is_empty() { format!("{n} chambers") } else { format!("{n} chambers; {}", errs.join("; ")) };
    Ok(Computed::new("chamber_axioms", errs.is_empty()).with_note(note))
}

/// (D₁·D₂·S) on the threefold against (D₁|_S·D₂|_S) on S for all pairs of basis classes.
fn compatible(x: &ThreefoldLattice, lat: &SurfaceLattice, t: &RestrictionTable, s: &[Rat]) -> Result<bool> {
    let n = x.basis.len();
    let unit = |i: usize| -> Vec<Rat> { (0..n).map(|k| int((k == i) as i64)).collect() };
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (unit(i), unit(j));
            let lhs = x.triple(&a, &b, s);
            let ra = t.restrict(&x.basis, &SymClass::from_rat(&x.name, &a)).map_err(fail)?;
            let rb = t.restrict(&x.basis, &SymClass::from_rat(&x.name, &b)).map_err(fail)?;
            if lat.pair_sym(&ra, &rb).map_err(fail)? != MultiPoly::from_rat(&lhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn restriction_compatibility() -> Result<Vec<Computed>> {
    let x = ThreefoldLattice::standard();
    let y = ThreefoldLattice::swapped();
    Ok(vec![
        Computed::new("restriction_compat_H", compatible(&x, &catalog::cubic_surface(), &restriction_to_h(), &x.class(0))?),
        Computed::new("restriction_compat_E", compatible(&x, &catalog::ruled_surface(), &restriction_to_e(), &x.class(1))?),
        Computed::new(
            "restriction_compat_H_prime",
            compatible(&y, &catalog::cubic_surface(), &restriction_to_h_prime(), &y.class(0))?,
        ),
    ])
}
