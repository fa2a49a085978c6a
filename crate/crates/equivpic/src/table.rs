use serde::{Deserialize, Serialize};

use crate::sequence::{degree_two_feasible, pic_invariant_candidates, resolve, Fact, SequenceData};
use crate::signature::{pic_glc, rh_check, PicStructure, Signature};

/// Values as printed next to a row, kept for comparison.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Printed {
    #[serde(default)]
    pub pic_glc: Option<String>,
    #[serde(default)]
    pub pic_g: Option<String>,
    #[serde(default)]
    pub degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub group_label: String,
    pub location: String,
    pub order: u64,
    #[serde(default = "three")]
    pub curve_genus: u64,
    pub signature: Signature,
    /// A Riemann–Hurwitz-consistent reading to use when the printed signature fails the check.
    #[serde(default)]
    pub alternative: Option<Signature>,
    pub hom: Vec<u64>,
    pub h2: Vec<u64>,
    #[serde(default)]
    pub resolution_facts: Vec<Fact>,
    #[serde(default)]
    pub printed: Printed,
}

fn three() -> u64 {
    3
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub group_label: String,
    pub signature: Signature,
    pub rh_ok: bool,
    pub pic_glc: Option<PicStructure>,
    pub error: Option<String>,
    pub candidates: Vec<PicStructure>,
    pub resolved: Vec<PicStructure>,
    /// Degree-2 feasibility of the resolved structure, when it is unique.
    pub degree_two_feasible: Option<bool>,
    pub alternative: Option<Box<RowReport>>,
}

fn evaluate_signature(row: &TableRow, sig: &Signature) -> RowReport {
    let mut rep = RowReport {
        group_label: row.group_label.clone(),
        signature: sig.clone(),
        rh_ok: rh_check(sig, row.order, row.curve_genus),
        pic_glc: None,
        error: None,
        candidates: vec![],
        resolved: vec![],
        degree_two_feasible: None,
        alternative: None,
    };
    let seq = SequenceData::new(&row.hom, &row.h2);
    match pic_glc(sig).and_then(|p| Ok((pic_invariant_candidates(&p, &seq)?, p))) {
        Ok((cands, p)) => {
            rep.resolved = resolve(&cands, &row.resolution_facts);
            if let [one] = rep.resolved.as_slice() {
                rep.degree_two_feasible = Some(degree_two_feasible(one));
            }
            rep.candidates = cands;
            rep.pic_glc = Some(p);
        }
        Err(e) => rep.error = Some(e.to_string()),
    }
    rep
}

pub fn evaluate_row(row: &TableRow) -> RowReport {
    let mut rep = evaluate_signature(row, &row.signature);
    if !rep.rh_ok {
        if let Some(alt) = &row.alternative {
            rep.alternative = Some(Box::new(evaluate_signature(row, alt)));
        }
    }
    rep
}

pub fn evaluate_table(rows: &[TableRow]) -> Vec<RowReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        rows.par_iter().map(evaluate_row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        rows.iter().map(evaluate_row).collect()
    }
}

pub fn bundled_table() -> Vec<TableRow> {
    serde_json::from_str(include_str!("../data/table.json")).expect("bundled table parses")
}
