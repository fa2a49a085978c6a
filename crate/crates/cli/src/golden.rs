use std::collections::BTreeSet;
use std::path::Path;

use exactnum::{fmt_rat, MultiPoly};
use groups::ProjPoint;
use serde::{Deserialize, Serialize};

use crate::expr::substitute;
use crate::{Claim, CliError, Computed, Kind, Result, Section, Status};

/// One printed value. An entry whose id ends in `[name]` is a template: engine ids `id[name=value]`
/// take their expected value from the template with `name` bound to `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub id: String,
    pub section: Section,
    pub criterion: u8,
    pub paper_location: String,
    pub kind: Kind,
    pub expected: String,
    /// Documented discrepancy between the printed value and the engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

impl GoldenEntry {
    fn template_param(&self) -> Option<(&str, &str)> {
        let (base, rest) = self.id.split_once('[')?;
        let name = rest.strip_suffix(']')?;
        (!name.contains('=')).then_some((base, name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub entries: Vec<GoldenEntry>,
}

/// Splits `base[name=value]`.
fn instance(id: &str) -> Option<(&str, &str, &str)> {
    let (base, rest) = id.split_once('[')?;
    let (name, value) = rest.strip_suffix(']')?.split_once('=')?;
    Some((base, name, value))
}

/// Canonical exact rendering used on both sides of a comparison.
pub fn canonical(kind: Kind, s: &str) -> String {
    let s = s.trim();
    match kind {
        Kind::Rational => s
            .parse::<MultiPoly>()
            .ok()
            .and_then(|p| p.to_rat())
            .map(|q| fmt_rat(&q))
            .unwrap_or_else(|| s.to_string()),
        Kind::Integer => s.parse::<i64>().map(|n| n.to_string()).unwrap_or_else(|_| s.to_string()),
        Kind::Boolean => s.to_ascii_lowercase(),
        Kind::Structure => {
            if s.starts_with('[') && s.contains(':') {
                let pts: std::result::Result<Vec<ProjPoint>, _> = s.split(';').map(|p| p.parse::<ProjPoint>()).collect();
                if let Ok(mut pts) = pts {
                    pts.sort();
                    return pts.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
                }
            }
            if let Ok(p) = s.parse::<MultiPoly>() {
                return p.to_string();
            }
            s.split_whitespace().collect::<Vec<_>>().join(" ")
        }
    }
}

impl Golden {
    pub fn bundled() -> Self {
        Self::from_json(include_str!("../data/golden.json")).expect("bundled golden corpus parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<GoldenEntry> = serde_json::from_str(s)?;
        let mut seen = BTreeSet::new();
        for e in &entries {
            if !seen.insert(&e.id) {
                return Err(CliError::Parse(format!("duplicate golden id {}", e.id)));
            }
        }
        Ok(Golden { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn criteria(&self) -> BTreeSet<u8> {
        self.entries.iter().map(|e| e.criterion).collect()
    }

    pub fn find(&self, id: &str) -> Option<(&GoldenEntry, Option<(String, String)>)> {
        if let Some(e) = self.entries.iter().find(|e| e.id == id) {
            return Some((e, None));
        }
        let (base, name, value) = instance(id)?;
        let e = self.entries.iter().find(|e| e.template_param() == Some((base, name)))?;
        Some((e, Some((name.to_string(), value.to_string()))))
    }

    fn claim(e: &GoldenEntry, id: &str, bind: Option<(String, String)>, computed: Option<&Computed>, err: Option<&str>) -> Claim {
        let raw = match &bind {
            Some((n, v)) => substitute(&e.expected, &[(n.as_str(), v.as_str())]),
            None => e.expected.clone(),
        };
        let expected = canonical(e.kind, &raw);
        let mut claim = Claim {
            id: id.to_string(),
            criterion: e.criterion,
            paper_location: e.paper_location.clone(),
            kind: e.kind,
            expected,
            computed: String::new(),
            status: Status::Skipped,
            note: None,
        };
        match (computed, err) {
            (_, Some(msg)) => {
                claim.computed = format!("error: {msg}");
                claim.status = Status::Mismatch;
            }
            (None, None) => claim.note = Some("not computed".into()),
            (Some(c), None) => {
                claim.computed = canonical(e.kind, &c.value);
                claim.note = c.note.clone();
                claim.status = if claim.computed == claim.expected {
                    Status::Match
                } else if let Some(f) = &e.flag {
                    claim.note = Some(match &c.note {
                        Some(n) => format!("{f}; {n}"),
                        None => f.clone(),
                    });
                    Status::Flagged
                } else {
                    Status::Mismatch
                };
            }
        }
        claim
    }

    /// Claims of one section from the engine output. Every computed id must have a golden entry;
    /// golden entries without a computed value are reported as skipped.
    pub fn judge(&self, section: Section, out: std::result::Result<Vec<Computed>, String>) -> Result<Vec<Claim>> {
        let mine: Vec<&GoldenEntry> = self.entries.iter().filter(|e| e.section == section).collect();
        let computed = match out {
            Ok(c) => c,
            Err(msg) => {
                return Ok(mine.iter().map(|e| Self::claim(e, &e.id, None, None, Some(&msg))).collect());
            }
        };
        let mut claims = Vec::new();
        let mut used = BTreeSet::new();
        for c in &computed {
            let (e, bind) = self
                .find(&c.id)
                .filter(|(e, _)| e.section == section)
                .ok_or_else(|| CliError::Compute(format!("no golden value for {}", c.id)))?;
            used.insert(e.id.clone());
            claims.push(Self::claim(e, &c.id, bind, Some(c), None));
        }
        for e in mine {
            if !used.contains(&e.id) {
                claims.push(Self::claim(e, &e.id, None, None, None));
            }
        }
        Ok(claims)
    }
}
