use equivpic::sequence::quotient_by_element;
use equivpic::{bundled_table, evaluate_row, evaluate_table, PicStructure, RowReport};
use exactnum::fmt_rat;

use super::fail;
use crate::{Computed, Result, RunOptions};

fn unique(r: &RowReport) -> Result<&PicStructure> {
    match r.resolved.as_slice() {
        [p] => Ok(p),
        other => Err(fail(format!("{}: {} candidates remain", r.group_label, other.len()))),
    }
}

fn row_id(label: &str) -> String {
    label.replace(['^', ':', '.', '(', ')'], "_").trim_end_matches('_').to_string()
}

pub fn produce(opts: &RunOptions) -> Result<Vec<Computed>> {
    let rows = bundled_table();
    let reports = if opts.parallel { evaluate_table(&rows) } else { rows.iter().map(evaluate_row).collect() };
    let mut out = Vec::new();
    for (row, r) in rows.iter().zip(&reports) {
        let id = row_id(&r.group_label);
        if r.group_label == "SL2(3)" {
            out.push(Computed::new("row_sl23", r.rh_ok).with_note(r.error.clone().unwrap_or_default()));
            let alt = r.alternative.as_deref().ok_or_else(|| fail("SL2(3) row has no alternative signature"))?;
            let p = unique(alt)?;
            out.push(Computed::new("row_sl23_alt_degree", fmt_rat(&p.degree)));
            out.push(Computed::new("row_sl23_alt_pic_g", &p.group));
            out.push(Computed::new("row_sl23_alt_degree_two_feasible", alt.degree_two_feasible.unwrap_or(true)));
            continue;
        }
        if let (Some(p), Some(_)) = (&r.pic_glc, &row.printed.pic_glc) {
            out.push(Computed::new(format!("pic_glc_{id}"), p));
        }
        let p = unique(r)?;
        out.push(Computed::new(format!("row_{id}"), p));
        if let (Some(f), true) = (r.degree_two_feasible, p.degree == exactnum::int(4)) {
            out.push(Computed::new(format!("degree_two_feasible_{id}"), f));
        }
        if r.group_label == "mu4^2:mu3" {
            // K_C = 2D + δ with δ the nonzero two-torsion class
            out.push(Computed::new("kc_quotient_mu4_2_mu3", quotient_by_element(p, 2, &vec![1])));
        }
    }
    Ok(out)
}
