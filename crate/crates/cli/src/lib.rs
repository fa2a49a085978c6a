//! Batch reproduction: computes every claim of a section, compares it with the bundled golden
//! values and assembles a deterministic JSON report.

pub mod claims;
pub mod config;
pub mod expr;
pub mod golden;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::Config;
pub use golden::{Golden, GoldenEntry};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Parse(String),
    #[error("unknown section {0:?}")]
    Section(String),
    #[error("{0}")]
    Compute(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Stability,
    Curves,
    Groups,
    Equivpic,
    All,
}

impl Section {
    pub const PARTS: [Section; 4] = [Section::Stability, Section::Curves, Section::Groups, Section::Equivpic];

    pub fn parts(self) -> Vec<Section> {
        match self {
            Section::All => Self::PARTS.to_vec(),
            s => vec![s],
        }
    }
}

impl FromStr for Section {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stability" => Ok(Section::Stability),
            "curves" => Ok(Section::Curves),
            "groups" => Ok(Section::Groups),
            "equivpic" => Ok(Section::Equivpic),
            "all" => Ok(Section::All),
            _ => Err(CliError::Section(s.into())),
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rational,
    Integer,
    Boolean,
    Structure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Flagged,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub criterion: u8,
    pub paper_location: String,
    pub kind: Kind,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub timestamp: String,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn has_mismatch(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Mismatch)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn by_criterion(&self) -> BTreeMap<u8, Vec<&Claim>> {
        let mut out: BTreeMap<u8, Vec<&Claim>> = BTreeMap::new();
        for c in &self.claims {
            out.entry(c.criterion).or_default().push(c);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// A value produced by the engine for one claim id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed {
    pub id: String,
    pub value: String,
    pub note: Option<String>,
}

impl Computed {
    pub fn new(id: impl Into<String>, value: impl ToString) -> Self {
        Computed { id: id.into(), value: value.to_string(), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub config: Config,
    /// Run the section producers (and the Zariski recursion) on the rayon pool.
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { config: Config::default(), parallel: cfg!(feature = "parallel") }
    }
}

fn produce(sections: &[Section], opts: &RunOptions) -> Vec<(Section, std::result::Result<Vec<Computed>, String>)> {
    let run = |s: &Section| (*s, claims::produce(*s, opts).map_err(|e| e.to_string()));
    #[cfg(feature = "parallel")]
    if opts.parallel {
        use rayon::prelude::*;
        return sections.par_iter().map(run).collect();
    }
    sections.iter().map(run).collect()
}

/// Computes the claims of a section and compares them with the golden corpus. The claims come out
/// sorted by id; only the timestamp depends on the run.
pub fn run(section: Section, golden: &Golden, opts: &RunOptions) -> Result<Report> {
    let parts = section.parts();
    let mut claims = Vec::new();
    for (s, out) in produce(&parts, opts) {
        claims.extend(golden.judge(s, out)?);
    }
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report {
        version: REPORT_VERSION.into(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        claims,
    })
}

/// The report with the timestamp blanked, for byte comparisons between runs.
pub fn normalized_json(r: &Report) -> Result<String> {
    Report { timestamp: String::new(), ..r.clone() }.to_json()
}
