use exactnum::{int, MultiPoly, Rat};
use lattice::ZariskiOptions;
use serde::{Deserialize, Serialize};

use crate::compute::{s_curve, s_curve_symbolic, s_divisor, s_exceptional, s_point, Setup};
use crate::flag::{FlagDescriptor, IncidenceProfile, Scenario};
use crate::{Result, StabilityError};

/// One computed S-value and where it appears in the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SValue {
    pub id: String,
    pub location: String,
    #[serde(with = "exactnum::serde_str::rat")]
    pub value: Rat,
    /// The value bounds the invariant from above rather than equalling it.
    pub upper_bound: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPoly {
    pub id: String,
    pub location: String,
    #[serde(with = "exactnum::serde_str::poly")]
    pub value: MultiPoly,
    pub upper_bound: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Inconclusive,
}

/// Verdict of one sufficient bound: the curve bound A/S ≥ min{1/S_X(S), 1/S(W;C)} or the point bound
/// A/S ≥ min{1/S_X(S), 2/S(W;F), inf 1/S(W;O)}, each giving β > 0 when every ratio exceeds 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound: String,
    pub outcome: Outcome,
    /// Inequalities that fail.
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub bounds: Vec<BoundVerdict>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        !self.bounds.is_empty() && self.bounds.iter().all(|b| b.outcome == Outcome::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SReport {
    pub flag: String,
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(with = "exactnum::serde_str::rat")]
    pub tau: Rat,
    pub chambers: Vec<String>,
    pub s_divisor: SValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_curve: Option<SValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_exceptional: Option<SValue>,
    #[serde(default)]
    pub s_points: Vec<SValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<SPoly>,
    pub verdict: Verdict,
}

fn check(failing: &mut Vec<String>, v: &SValue, limit: i64) {
    if v.value >= int(limit) {
        failing.push(format!("{} = {} is not < {limit}", v.id, exactnum::fmt_rat(&v.value)));
    }
}

/// PASS when every supplied inequality of a bound holds strictly; otherwise INCONCLUSIVE.
pub fn beta_verdict(r: &SReport) -> Verdict {
    let mut bounds = Vec::new();
    if let Some(c) = &r.s_curve {
        let mut failing = Vec::new();
        check(&mut failing, &r.s_divisor, 1);
        check(&mut failing, c, 1);
        bounds.push(BoundVerdict { bound: "curve".into(), outcome: outcome(&failing), failing });
    }
    if let Some(f) = &r.s_exceptional {
        let mut failing = Vec::new();
        check(&mut failing, &r.s_divisor, 1);
        check(&mut failing, f, 2);
        for o in &r.s_points {
            check(&mut failing, o, 1);
        }
        bounds.push(BoundVerdict { bound: "point".into(), outcome: outcome(&failing), failing });
    }
    Verdict { bounds }
}

fn outcome(failing: &[String]) -> Outcome {
    if failing.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Inconclusive
    }
}

/// The scenarios of the source, as shipped with the crate.
pub fn catalogue() -> Vec<FlagDescriptor> {
    serde_json::from_str(include_str!("../data/scenarios.json")).expect("bundled scenario file parses")
}

#[derive(Clone, Debug)]
pub struct EvalOptions {
    /// Overrides each flag's curve-list mode when set.
    pub strict: Option<bool>,
    /// Values of e used when a ruled flag leaves e symbolic.
    pub e_values: Vec<i64>,
    pub zariski: ZariskiOptions,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { strict: None, e_values: vec![-2, 0, 2, 4, 6, 8], zariski: ZariskiOptions::default() }
    }
}

fn value(id: String, location: &str, value: Rat, upper_bound: bool) -> SValue {
    SValue { id, location: location.into(), value, upper_bound, notes: Vec::new() }
}

fn point_value(setup: &Setup, flag: &FlagDescriptor, o: &IncidenceProfile) -> Result<SValue> {
    let notes = flag.check_profile(o)?;
    let mut v = value(format!("{}/O:{}", flag.name, o.name), &o.location, s_point(setup, o)?, false);
    v.notes = notes;
    Ok(v)
}

fn report_for(flag: &FlagDescriptor, opts: &EvalOptions) -> Result<SReport> {
    let setup = Setup::new(flag, None, opts.zariski)?;
    let mut chambers: Vec<String> =
        setup.threefold.chambers.iter().map(|c| format!("{}: {}", setup.x.name, c.describe(&setup.x.basis))).collect();
    for p in &setup.pieces {
        if let Some(b) = &p.blown {
            chambers.extend(b.chambers.iter().map(|c| format!("{}: {}", setup.blown_surface.name, c.describe(&setup.blown_surface.basis))));
        }
    }
    let sx = value(format!("{}/S_X(S)", flag.name), &flag.location, s_divisor(&setup)?, false);
    let mut r = SReport {
        flag: flag.name.clone(),
        scenario: flag.scenario,
        e: flag.e,
        tau: setup.tau.clone(),
        chambers,
        s_divisor: sx,
        s_curve: None,
        s_exceptional: None,
        s_points: Vec::new(),
        polynomials: Vec::new(),
        verdict: Verdict { bounds: Vec::new() },
    };
    if let Some(c) = &flag.curve {
        let t = s_curve(&setup, c)?;
        r.s_curve = Some(value(format!("{}/S(W;C)", flag.name), &flag.location, t.total, t.upper_bound));
    }
    if flag.scenario.is_cubic() {
        r.s_exceptional = Some(value(format!("{}/S(W;F)", flag.name), &flag.location, s_exceptional(&setup)?, false));
        let eval = |o: &IncidenceProfile| point_value(&setup, flag, o);
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            r.s_points = flag.profiles.par_iter().map(eval).collect::<Result<_>>()?;
        }
        #[cfg(not(feature = "parallel"))]
        {
            r.s_points = flag.profiles.iter().map(eval).collect::<Result<_>>()?;
        }
    }
    r.verdict = beta_verdict(&r);
    Ok(r)
}

/// Reports for one flag; a ruled flag with symbolic e gives one report per sampled e, each also
/// carrying S(W;C) as a polynomial in e.
pub fn evaluate(flag: &FlagDescriptor, opts: &EvalOptions) -> Result<Vec<SReport>> {
    let mut flag = flag.clone();
    if let Some(s) = opts.strict {
        flag.strict = s;
    }
    if flag.scenario != Scenario::RuledE || flag.e.is_some() {
        return Ok(vec![report_for(&flag, opts)?]);
    }
    let sym = s_curve_symbolic(&flag, &opts.e_values, opts.zariski)?;
    let loc = flag.location.clone();
    let polys = vec![
        SPoly { id: format!("{}/d-term", flag.name), location: loc.clone(), value: sym.d_term.clone(), upper_bound: sym.upper_bound },
        SPoly { id: format!("{}/volume-term", flag.name), location: loc.clone(), value: sym.vol_term.clone(), upper_bound: false },
        SPoly { id: format!("{}/S(W;C)", flag.name), location: loc, value: sym.total.clone(), upper_bound: sym.upper_bound },
    ];
    let mut out = Vec::new();
    for e in &opts.e_values {
        let mut f = flag.clone();
        f.e = Some(*e);
        f.name = format!("{}[e={e}]", flag.name);
        let mut r = report_for(&f, opts)?;
        r.polynomials = polys.clone();
        out.push(r);
    }
    Ok(out)
}

/// Every flag, evaluated concurrently; the output keeps the input order.
pub fn evaluate_all(flags: &[FlagDescriptor], opts: &EvalOptions) -> Result<Vec<SReport>> {
    let run = |f: &FlagDescriptor| evaluate(f, opts);
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<SReport>> = {
        use rayon::prelude::*;
        flags.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<SReport>> = flags.iter().map(run).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

impl SReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(StabilityError::from)
    }

    /// Every S-value in the report, in a fixed order.
    pub fn values(&self) -> Vec<&SValue> {
        let mut v = vec![&self.s_divisor];
        v.extend(self.s_curve.as_ref());
        v.extend(self.s_exceptional.as_ref());
        v.extend(&self.s_points);
        v
    }
}
