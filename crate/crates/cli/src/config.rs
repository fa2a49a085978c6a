//! INI run configuration:
//!
//! ```ini
//! [curves]
//! mode = strict        ; or lenient; omit to use each scenario's own setting
//!
//! [specializations]
//! a = 2                ; parameter of the octahedral pencil
//! e = -2, 0, 2, 4, 6, 8  ; values sampled for the symbolic ruled surface
//! ```
//!
//! Keys may also appear without a section header.

use std::path::Path;

use exactnum::{int, parse_rat, Rat};
use ini::Ini;

use crate::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Overrides the curve-list mode of every scenario when set.
    pub strict: Option<bool>,
    pub a: Rat,
    pub e_values: Vec<i64>,
}

impl Default for Config {
    fn default() -> Self {
        Config { strict: None, a: int(2), e_values: vec![-2, 0, 2, 4, 6, 8] }
    }
}

fn lookup<'a>(ini: &'a Ini, section: &str, key: &str) -> Option<&'a str> {
    ini.section(Some(section)).and_then(|s| s.get(key)).or_else(|| ini.general_section().get(key))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let mut c = Config::default();
        if let Some(m) = lookup(&ini, "curves", "mode") {
            c.strict = match m.trim() {
                "strict" => Some(true),
                "lenient" => Some(false),
                other => return Err(CliError::Config(format!("mode must be strict or lenient, got {other:?}"))),
            };
        }
        if let Some(a) = lookup(&ini, "specializations", "a") {
            c.a = parse_rat(a.trim()).map_err(|e| CliError::Config(format!("a: {e}")))?;
        }
        if let Some(e) = lookup(&ini, "specializations", "e") {
            c.e_values = e
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::Config(format!("e: bad integer {s:?}"))))
                .collect::<Result<_>>()?;
            if c.e_values.is_empty() || c.e_values.iter().any(|e| e % 2 != 0 || !(-2..=8).contains(e)) {
                return Err(CliError::Config("e values must be even and lie in [-2, 8]".into()));
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}
