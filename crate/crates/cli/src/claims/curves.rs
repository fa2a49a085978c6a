use std::collections::BTreeMap;

use detcurves::matrix::bilinear_matrix;
use detcurves::{
    bundled, finite_field_points, linear_system_with_conditions, map_self_compose, maximal_minors, orbit_vanishing,
    pencil_determinant, reduce_power, symbolic_orbit, var, xvars, HomIdeal, LinearFormMatrix, Ratio,
};
use exactnum::{fmt_rat, poly, CycloNum, MultiPoly};

use super::fail;
use crate::{Computed, Result, RunOptions};

fn at(name: &str, v: CycloNum) -> BTreeMap<usize, CycloNum> {
    BTreeMap::from([(var(name), v)])
}

pub fn produce(opts: &RunOptions) -> Result<Vec<Computed>> {
    let b = bundled();
    let g = groups::bundled();
    let mut out = Vec::new();

    let mats = b.polys("example-forms").map_err(fail)?.iter().map(bilinear_matrix).collect::<std::result::Result<Vec<_>, _>>().map_err(fail)?;
    let minors = maximal_minors(&LinearFormMatrix::from_forms(&mats).map_err(fail)?).map_err(fail)?;
    out.push(Computed::new("example_minors_rank", minors.span_rank().map_err(fail)?));
    out.push(Computed::new(
        "example_minors_span_printed",
        minors.span_equals(&b.ideal("example-sextic").map_err(fail)?).map_err(fail)?,
    ));

    let pencil = b.matrices("s4-pencil").map_err(fail)?;
    let m = LinearFormMatrix::from_forms(&pencil).map_err(fail)?;
    out.push(Computed::new("s4_linear_matrix_printed", m.rows == b.matrices("s4-linear").map_err(fail)?[0]));
    out.push(Computed::new("s4_minors_printed", maximal_minors(&m).map_err(fail)?.gens == b.polys("s4-sextic").map_err(fail)?));

    let p = pencil_determinant(&pencil[0], &pencil[1], &pencil[2]).map_err(fail)?;
    let lambda = p.normal_form.ok_or_else(|| fail("family pencil is not octahedral"))?.lambda;
    out.push(Computed::new("pencil_lambda_symbolic", lambda == Ratio::new(poly("-(2*a^4+2)"), poly("(a^2+1)^2"))));
    let a = &opts.config.a;
    let value = lambda.eval(&at("a", CycloNum::from_rat(a))).ok_or_else(|| fail("pencil λ has a pole there"))?;
    out.push(Computed::new(format!("pencil_lambda[a={}]", fmt_rat(a)), value));

    let fermat = b.matrices("fermat-pencil").map_err(fail)?;
    let q = pencil_determinant(&fermat[0], &fermat[1], &fermat[2]).map_err(fail)?.quartic;
    let change = BTreeMap::from([(var("x"), poly("(x+z)/2")), (var("y"), poly("y")), (var("z"), poly("(x-z)/2"))]);
    out.push(Computed::new("fermat_pencil_after_change", q.subst(&change)));

    let sextic = b.ideal("s4-sextic").map_err(fail)?;
    let s4 = g.generators("S4").map_err(fail)?;
    let preserved = |a: &str| -> Result<bool> {
        let f = sextic.specialize(&at("a", exactnum::cyc(a)));
        for m in &s4 {
            if !f.is_invariant(m).map_err(fail)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut generic = true;
    for a in ["2", "3", "-2", "1/3", "1+i"] {
        generic &= preserved(a)?;
    }
    out.push(
        Computed::new("s4_family_symmetric_generic_a", generic)
            .with_note("sampled at a = 2, 3, -2, 1/3, 1+i"),
    );
    out.push(Computed::new("s4_family_symmetric_at_half", preserved("1/2")?));

    let heart = b.ideal("heart").map_err(fail)?;
    let group = g.group("G").map_err(fail)?;
    let p = [MultiPoly::one(), MultiPoly::one(), MultiPoly::one(), MultiPoly::var(var("u"))];
    let orbit = symbolic_orbit(&group, &p);
    out.push(Computed::new("heart_orbit_len", orbit.len()));
    out.push(Computed::new("heart_vanish_on_orbit", orbit_vanishing(&orbit, &heart)));

    let u0 = b.points("special-u").map_err(fail)?[0][0].clone();
    let h = heart.specialize(&at("u", u0));
    let mut invariant = true;
    for n in ["M", "N", "A", "B", "C"] {
        invariant &= h.is_invariant(&g.matrix(n).map_err(fail)?).map_err(fail)?;
    }
    out.push(Computed::new(
        "heart_special_u_printed",
        invariant && h.span_equals(&b.ideal("heart-sextic").map_err(fail)?).map_err(fail)?,
    ));

    let (plus, minus) = (b.ideal("elliptic-plus").map_err(fail)?, b.ideal("elliptic-minus").map_err(fail)?);
    let u = var("u");
    for (id, s) in [("heart_u2_plus", "i*r3"), ("heart_u2_minus", "-i*r3")] {
        let cubics: Vec<MultiPoly> = heart
            .gens
            .iter()
            .map(|f| reduce_power(&reduce_power(f, u, 4, &exactnum::cyc("-3")), u, 2, &exactnum::cyc(s)))
            .collect();
        let count = |ideal: &HomIdeal| -> Result<usize> {
            let mut n = 0;
            for f in &cubics {
                n += ideal.contains(f).map_err(fail)? as usize;
            }
            Ok(n)
        };
        let (np, nm) = (count(&plus)?, count(&minus)?);
        let all = cubics.len();
        let which = match (np == all, nm == all, np == 0, nm == 0) {
            (true, _, _, true) => "C4+".to_string(),
            (_, true, true, _) => "C4-".to_string(),
            _ => format!("{np} of {all} in C4+, {nm} of {all} in C4-"),
        };
        out.push(Computed::new(id, which).with_note(format!("u^2 = {s}")));
    }

    let iota = map_self_compose(&b.map("iota").map_err(fail)?).map_err(fail)?;
    out.push(Computed::new("iota_involution", iota.identity));
    let deg = iota.factor.map(|f| f.degree_in_vars(&xvars()).to_string()).unwrap_or_else(|| "none".into());
    out.push(Computed::new("iota_factor_degree", deg));

    let quartic = b.polys("plane-quartic").map_err(fail)?.remove(0);
    out.push(Computed::new("plane_quartic_points_F3", finite_field_points(&quartic, 3).map_err(fail)?));
    let conds: Vec<([CycloNum; 3], u32)> = b
        .points("tangency")
        .map_err(fail)?
        .into_iter()
        .map(|p| ([p[0].clone(), p[1].clone(), p[2].clone()], 3))
        .collect();
    let system = linear_system_with_conditions(3, &quartic, &conds).map_err(fail)?;
    out.push(Computed::new("tangency_dim", system.len()).with_note("cubics with contact order 3 at both points"));
    Ok(out)
}
