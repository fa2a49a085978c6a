use groups::{bundled, fixed_locus, is_normal, MatrixGroup, ProjMatrix, ProjPoint, Subspace};

use super::fail;
use crate::{Computed, Result};

fn pt(s: &str) -> Result<ProjPoint> {
    s.parse().map_err(fail)
}

fn list(points: &[ProjPoint]) -> String {
    let mut p = points.to_vec();
    p.sort();
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn isolated(locus: &[Subspace]) -> Vec<ProjPoint> {
    locus.iter().filter_map(Subspace::point).collect()
}

/// Every fixed subspace lies in {x0 = x1 = 0} or in {x2 = x3 = 0}.
fn in_coordinate_lines(locus: &[Subspace]) -> bool {
    let zero = |s: &Subspace, a: usize, b: usize| s.basis().iter().all(|v| v[a].is_zero() && v[b].is_zero());
    !locus.is_empty() && locus.iter().all(|s| zero(s, 0, 1) || zero(s, 2, 3))
}

pub fn produce() -> Result<Vec<Computed>> {
    let b = bundled();
    let g = b.group("G").map_err(fail)?;
    let m = |n: &str| b.matrix(n).map_err(fail);
    let sub = |gens: &[ProjMatrix]| g.subgroup(gens).map_err(fail);
    let fixed = |h: &MatrixGroup| fixed_locus(h).map_err(fail);
    let mut out = vec![Computed::new("order_G", g.order())];

    let reps = [
        ("sigma4", "[1:0:0:0]"),
        ("sigma12", "[1+i:r2:0:0]"),
        ("sigma12p", "[1-i:r2:0:0]"),
        ("sigma16", "[-1+r3*i:-1-r3*i:2:0]"),
        ("sigma16p", "[-1-r3*i:-1+r3*i:2:0]"),
        ("sigma16u", "[1:1:1:5]"),
        ("sigma24", "[2:1:0:0]"),
    ];
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, p) in reps {
        let p = pt(p)?;
        let orbit = g.orbit(&p);
        out.push(Computed::new(format!("orbit_{name}_len"), orbit.len()).with_note(format!("orbit of {p}")));
        // every point of the orbit, not only the representative
        for q in &orbit {
            checked += 1;
            if orbit.len() * g.stabilizer(q).order() != g.order() {
                failures.push(q.to_string());
            }
        }
    }

    let bc = sub(&[m("B")?, m("C")?])?;
    out.push(Computed::new("subgroup_BC_order", bc.order()));
    out.push(Computed::new("subgroup_BC_invariants", bc.abelian_invariants()));
    out.push(Computed::new("subgroup_BC_normal", is_normal(&bc, &g).map_err(fail)?));
    let big = b.group("G192").map_err(fail)?;
    out.push(Computed::new("order_G192", big.order()));
    out.push(Computed::new("G_normal_in_G192", is_normal(&g, &big).map_err(fail)?));

    let s4 = g.orbit(&pt("[1:0:0:0]")?);
    let amn = isolated(&fixed(&sub(&[m("A")?, m("M")?, m("N")?])?)?);
    out.push(Computed::new("fixed_AMN_point", list(&amn)));
    out.push(Computed::new("fixed_AMN_in_sigma4", amn.len() == 1 && s4.contains(&amn[0])));

    out.push(Computed::new("fixed_B_points", list(&isolated(&fixed(&sub(&[m("B")?])?)?))));
    out.push(Computed::new("fixed_CB_points", list(&isolated(&fixed(&sub(&[m("C")?.mul(&m("B")?)])?)?))));
    out.push(Computed::new("c_matrix_as_printed", m("C-printed")? == m("C")?));

    let fa = fixed(&sub(&[m("A")?])?)?;
    out.push(Computed::new("fixed_A_points", list(&isolated(&fa))));
    let lines: Vec<&Subspace> = fa.iter().filter(|s| s.dim() == 1).collect();
    let mut on_line = lines.len() == 1;
    for p in ["[1:1:1:0]", "[1:1:1:5]", "[1:1:1:i]", "[0:0:0:1]"] {
        on_line &= lines.first().is_some_and(|l| l.contains(&pt(p).unwrap()));
    }
    out.push(Computed::new("fixed_A_line", on_line).with_note("line through [1:1:1:t] and [0:0:0:1]"));

    out.push(Computed::new("fixed_M_in_printed_lines", in_coordinate_lines(&fixed(&sub(&[m("M")?])?)?)));
    out.push(Computed::new("fixed_MN_in_printed_lines", in_coordinate_lines(&fixed(&sub(&[m("M")?.mul(&m("N")?)])?)?)));

    out.push(Computed::new("fixed_G_none", fixed(&g)?.is_empty()));
    out.push(Computed::new("fixed_BC_none", fixed(&bc)?.is_empty()));
    out.push(Computed::new("fixed_BMN_none", fixed(&sub(&[m("B")?, m("M")?, m("N")?])?)?.is_empty()));
    let mn = isolated(&fixed(&sub(&[m("M")?, m("N")?])?)?);
    out.push(Computed::new("fixed_MN_in_sigma4", mn.iter().all(|p| s4.contains(p))));

    let note = if failures.is_empty() { format!("{checked} points") } else { format!("fails at {}", failures.join(", ")) };
    out.push(Computed::new("orbit_stabilizer", failures.is_empty()).with_note(note));
    Ok(out)
}
