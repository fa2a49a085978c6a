//! The `eval` query language: a polynomial expression, `integrate <expr> [d<var>] from <a> to <b>`,
//! or `orbit <point> [in <group>]`. Bindings `name=value` are substituted before parsing, so
//! division by an expression is allowed once its variables are bound.

use std::sync::OnceLock;

use exactnum::{fmt_rat, parse::parse_poly, var_index, ExactError, MultiPoly};
use regex::Regex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Eval(String),
}

fn ident() -> &'static Regex {
    static R: OnceLock<Regex> = OnceLock::new();
    R.get_or_init(|| Regex::new(r"[A-Za-z_][A-Za-z0-9_]*").unwrap())
}

/// Replaces whole identifiers by parenthesized values.
pub fn substitute(s: &str, bind: &[(&str, &str)]) -> String {
    ident()
        .replace_all(s, |c: &regex::Captures| {
            let name = &c[0];
            match bind.iter().find(|(n, _)| *n == name) {
                Some((_, v)) => format!("({v})"),
                None => name.to_string(),
            }
        })
        .into_owned()
}

pub fn parse_binding(s: &str) -> Result<(String, String), ExprError> {
    let (n, v) = s.split_once('=').ok_or_else(|| ExprError::Parse { pos: 0, msg: format!("binding {s:?} is not name=value") })?;
    let n = n.trim();
    if !ident().find(n).is_some_and(|m| m.as_str() == n) {
        return Err(ExprError::Parse { pos: 0, msg: format!("bad binding name {n:?}") });
    }
    Ok((n.to_string(), v.trim().to_string()))
}

fn parse_at(s: &str, offset: usize) -> Result<MultiPoly, ExprError> {
    parse_poly(s).map_err(|e| match e {
        ExactError::Parse { pos, msg } => ExprError::Parse { pos: pos + offset, msg },
        e => ExprError::Eval(e.to_string()),
    })
}

/// Canonical exact rendering: a fraction for rational constants, otherwise the field element or
/// polynomial in normal form.
pub fn render(p: &MultiPoly) -> String {
    match (p.to_rat(), p.to_constant()) {
        (Some(q), _) => fmt_rat(&q),
        (None, Some(c)) => c.to_string(),
        _ => p.to_string(),
    }
}

fn integrate_re() -> &'static Regex {
    static R: OnceLock<Regex> = OnceLock::new();
    R.get_or_init(|| {
        Regex::new(r#"^integrate\s+"?(?P<f>.+?)"?(?:\s+d(?P<v>[A-Za-z_][A-Za-z0-9_]*))?\s+from\s+(?P<lo>.+?)\s+to\s+(?P<hi>.+)$"#).unwrap()
    })
}

fn orbit_re() -> &'static Regex {
    static R: OnceLock<Regex> = OnceLock::new();
    R.get_or_init(|| Regex::new(r"^orbit\s+(?P<p>\[[^\]]*\])(?:\s+in\s+(?P<g>\S+))?$").unwrap())
}

/// Evaluates one query.
pub fn evaluate(text: &str, bind: &[(String, String)]) -> Result<String, ExprError> {
    let pairs: Vec<(&str, &str)> = bind.iter().map(|(n, v)| (n.as_str(), v.as_str())).collect();
    let lead = text.len() - text.trim_start().len();
    let text = text.trim();
    if let Some(c) = orbit_re().captures(text) {
        let p: groups::ProjPoint = c["p"].parse().map_err(|e: groups::GroupError| ExprError::Eval(e.to_string()))?;
        let set = c.name("g").map_or("G", |m| m.as_str());
        let g = groups::bundled().group(set).map_err(|e| ExprError::Eval(e.to_string()))?;
        return Ok(g.orbit(&p).len().to_string());
    }
    if let Some(c) = integrate_re().captures(text) {
        let f = c.name("f").unwrap();
        let body = parse_at(&substitute(f.as_str(), &pairs), lead + f.start())?;
        let v = match c.name("v") {
            Some(v) => var_index(v.as_str()).ok_or_else(|| ExprError::Eval(format!("unknown variable {}", v.as_str())))?,
            None => match body.vars_used().as_slice() {
                [v] => *v,
                [] => var_index("u").unwrap(),
                _ => return Err(ExprError::Eval("several variables: name one with d<var>".into())),
            },
        };
        let lo = c.name("lo").unwrap();
        let hi = c.name("hi").unwrap();
        let lo_p = parse_at(&substitute(lo.as_str(), &pairs), lead + lo.start())?;
        let hi_p = parse_at(&substitute(hi.as_str(), &pairs), lead + hi.start())?;
        return Ok(render(&body.integrate(v, &lo_p, &hi_p)));
    }
    let p = if pairs.is_empty() { parse_at(text, lead)? } else { parse_at(&substitute(text, &pairs), 0)? };
    Ok(render(&p))
}
