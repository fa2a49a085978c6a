use std::collections::BTreeMap;

use exactnum::{int, Rat};
use lattice::catalog::{self, classes};
use lattice::{Curve, SurfaceLattice, ThreefoldLattice};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::serde_util::{opt_rat_vec, rat_map};
use crate::{Result, StabilityError};

/// The closed list of surface scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    RuledE,
    CubicNoLine,
    CubicLineTransverse,
    CubicLineTangent,
}

type CurveLists = catalog::CurveLists<'static>;

impl Scenario {
    pub fn is_cubic(self) -> bool {
        self != Scenario::RuledE
    }

    /// Curves on the blown-up cubic surface (named list, (−2)-curves).
    pub fn curve_lists(self) -> Option<CurveLists> {
        match self {
            Scenario::RuledE => None,
            Scenario::CubicNoLine => Some(catalog::no_line_curves()),
            Scenario::CubicLineTransverse | Scenario::CubicLineTangent => Some(catalog::line_curves()),
        }
    }
}

/// One point O on F: local intersection numbers (C̃·F)_O for curves through O.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceProfile {
    pub name: String,
    #[serde(default)]
    pub location: String,
    #[serde(default)]
    pub incidences: BTreeMap<String, i64>,
    /// O = R̃ ∩ F
    #[serde(default)]
    pub at_r: bool,
}

impl IncidenceProfile {
    pub fn new(name: &str, incidences: &[(&str, i64)], at_r: bool) -> Self {
        IncidenceProfile {
            name: name.into(),
            location: String::new(),
            incidences: incidences.iter().map(|(c, k)| (c.to_string(), *k)).collect(),
            at_r,
        }
    }

    pub fn local(&self, curve: &str) -> i64 {
        self.incidences.get(curve).copied().unwrap_or(0)
    }

    fn through(&self, curve: &str) -> bool {
        self.local(curve) > 0
    }
}

/// Everything needed for one S-invariant computation on X with S ∈ |H|, |H′| or S = E.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagDescriptor {
    pub name: String,
    #[serde(default)]
    pub location: String,
    pub scenario: Scenario,
    /// Class of S on X, the family being −K − uS.
    pub divisor: String,
    #[serde(default)]
    pub p_in_e_prime: bool,
    /// Invariant of the ruled surface E; None keeps it symbolic.
    #[serde(default)]
    pub e: Option<i64>,
    /// Curve of interest on S, in the surface basis.
    #[serde(default, with = "opt_rat_vec", skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<Rat>>,
    /// Upper bounds for ord_C(D|_S), keyed by the divisor D on X.
    #[serde(default, with = "rat_map")]
    pub curve_orders: BTreeMap<String, Rat>,
    /// Multiplicity at P of each named curve on S.
    #[serde(default)]
    pub multiplicities: BTreeMap<String, i64>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub profiles: Vec<IncidenceProfile>,
}

impl FlagDescriptor {
    /// A cubic-surface flag with the multiplicities its scenario forces.
    pub fn cubic(name: &str, scenario: Scenario, p_in_e_prime: bool) -> Self {
        let mut m = BTreeMap::new();
        match scenario {
            Scenario::CubicNoLine => {
                m.insert("T".to_string(), 2);
                for i in 1..=6 {
                    m.insert(format!("l{i}"), 1);
                }
            }
            _ => {
                m.insert("l".to_string(), 1);
                m.insert("C2".to_string(), 1);
                for i in 1..=5 {
                    m.insert(format!("l{i}"), 1);
                }
            }
        }
        if p_in_e_prime {
            m.insert("R".to_string(), 1);
        }
        FlagDescriptor {
            name: name.into(),
            location: String::new(),
            scenario,
            divisor: "H".into(),
            p_in_e_prime,
            e: None,
            curve: None,
            curve_orders: BTreeMap::new(),
            multiplicities: m,
            strict: false,
            profiles: Vec::new(),
        }
    }

    /// S = E with a curve C = a·C₀ + b·ℓ and the bound ord_C(E′|_E) ≤ `order`.
    pub fn ruled(name: &str, e: Option<i64>, curve: [Rat; 2], order: Rat) -> Self {
        FlagDescriptor {
            name: name.into(),
            location: String::new(),
            scenario: Scenario::RuledE,
            divisor: "E".into(),
            p_in_e_prime: false,
            e,
            curve: Some(curve.to_vec()),
            curve_orders: BTreeMap::from([("E'".to_string(), order)]),
            multiplicities: BTreeMap::new(),
            strict: false,
            profiles: Vec::new(),
        }
    }

    /// The threefold lattice carrying S as a basis element or named class, and the class of S.
    pub fn threefold(&self) -> Result<(ThreefoldLattice, Vec<Rat>)> {
        let x = match self.divisor.as_str() {
            "H'" if self.scenario.is_cubic() => ThreefoldLattice::swapped(),
            "H'" | "H" | "E" => ThreefoldLattice::standard(),
            d => return Err(StabilityError::Flag(format!("{}: S must be H, H' or E, not {d}", self.name))),
        };
        let s = x.named(&self.divisor)?;
        Ok((x, s))
    }

    /// Curve on S each divisor of X restricts to, when it is tracked at P.
    pub fn restricted_curve<'a>(&self, x: &'a ThreefoldLattice, divisor: &str) -> Option<&'a str> {
        // the exceptional divisor that is not a basis element meets S∈|H| in R
        (self.scenario.is_cubic() && x.pseff[1].name == divisor).then_some("R")
    }

    pub fn multiplicity(&self, curve: &str) -> i64 {
        self.multiplicities.get(curve).copied().unwrap_or(0)
    }

    /// Blown-up classes f*C − mult_P(C)·F for the scenario curves, checked against the catalogue.
    fn blown_curves(&self) -> Result<CurveLists> {
        let lists = self.scenario.curve_lists().ok_or_else(|| StabilityError::Flag("not a cubic scenario".into()))?;
        let check = |(name, class): &(&str, Vec<Rat>)| -> Result<()> {
            if *name == "F" {
                return Ok(());
            }
            let base = name.trim_end_matches('~');
            let mut derived = classes::pullback(&class[..7]);
            derived[7] = int(-self.multiplicity(base));
            if &derived != class {
                return Err(StabilityError::Flag(format!(
                    "{}: multiplicity {} of {base} at P does not fit the {:?} scenario",
                    self.name,
                    self.multiplicity(base),
                    self.scenario
                )));
            }
            Ok(())
        };
        lists.0.iter().chain(&lists.1).try_for_each(check)?;
        Ok(lists)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(StabilityError::Flag(format!("{}: {m}", self.name)));
        if self.scenario.is_cubic() {
            if self.divisor != "H" && self.divisor != "H'" {
                return err("a cubic surface is cut by H or H'".into());
            }
            if self.e.is_some() || self.curve.is_some() {
                return err("e and a curve of interest belong to the ruled scenario".into());
            }
            let lists = self.blown_curves()?;
            let mut known: Vec<String> =
                lists.0.iter().chain(&lists.1).map(|(n, _)| n.trim_end_matches('~').to_string()).collect();
            known.push("R".into());
            if let Some(k) = self.multiplicities.keys().find(|k| !known.contains(k)) {
                return err(format!("unknown curve {k}"));
            }
            if self.multiplicity("R") != i64::from(self.p_in_e_prime) {
                return err("R passes through P with multiplicity 1 exactly when P lies on E'".into());
            }
        } else {
            if self.divisor != "E" {
                return err("the ruled scenario has S = E".into());
            }
            if !self.multiplicities.is_empty() || self.p_in_e_prime {
                return err("point data belongs to the cubic scenarios".into());
            }
            if self.e.is_some_and(|e| e % 2 != 0 || !(-2..=8).contains(&e)) {
                return err("e must be even with -2 <= e <= 8".into());
            }
        }
        if self.curve_orders.values().any(|q| q < &Rat::zero()) {
            return err("orders of vanishing are nonnegative".into());
        }
        Ok(())
    }

    /// Curves for the Zariski engine on S̃.
    pub fn engine_curves(&self, lat: &SurfaceLattice) -> Result<Vec<Curve>> {
        let lists = self.blown_curves()?;
        Ok(catalog::engine_curves(lat, &lists, self.strict)?)
    }

    /// Checks a point profile against this flag. Returns notes on combinations the lattice rules out
    /// (two curves with intersection number 0 cannot share O).
    pub fn check_profile(&self, o: &IncidenceProfile) -> Result<Vec<String>> {
        let err = |m: String| Err(StabilityError::Profile(format!("{}: {m}", o.name)));
        let lists = self.blown_curves()?;
        let lat = catalog::blown_cubic_surface();
        let f = classes::f();
        let class_of = |n: &str| lists.0.iter().chain(&lists.1).find(|(m, _)| *m == n).map(|(_, c)| c.clone());
        if o.at_r && !self.p_in_e_prime {
            return err("O = R~ ∩ F needs P in E'".into());
        }
        let mut through: Vec<(String, Vec<Rat>)> = Vec::new();
        for (name, &k) in &o.incidences {
            let Some(c) = class_of(name).filter(|_| name != "F") else {
                return err(format!("{name} is not a curve of the {:?} scenario", self.scenario));
            };
            let full = lat.pair_rat(&c, &f)?;
            if k < 0 || int(k) > full {
                return err(format!("local intersection {k} of {name} with F is outside [0, {}]", exactnum::fmt_rat(&full)));
            }
            if k > 0 {
                through.push((name.clone(), c));
            }
        }
        match self.scenario {
            Scenario::CubicLineTransverse if o.through("l~") && o.through("C2~") => {
                return err("l and C2 meet transversally at P, so l~ and C2~ meet F at different points".into())
            }
            Scenario::CubicNoLine if o.through("T~") && through.len() > 1 => {
                return err("on a general S no line through P shares its tangent direction with T".into())
            }
            _ => {}
        }
        if o.at_r {
            through.push(("R~".into(), classes::r(self.multiplicity("R"))));
        }
        let mut notes = Vec::new();
        for (i, (a, ca)) in through.iter().enumerate() {
            for (b, cb) in &through[i + 1..] {
                if lat.pair_rat(ca, cb)?.is_zero() {
                    notes.push(format!("{a} and {b} are disjoint, so no point lies on both"));
                }
            }
        }
        Ok(notes)
    }
}
