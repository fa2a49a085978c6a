use std::collections::BTreeMap;

use detcurves::*;
use exactnum::*;
use groups::ProjMatrix;

fn at(name: &str, v: CycloNum) -> BTreeMap<usize, CycloNum> {
    BTreeMap::from([(var(name), v)])
}

fn gens(set: &str) -> Vec<ProjMatrix> {
    groups::bundled().generators(set).unwrap()
}

#[test]
fn bilinear_example_minors_span_the_printed_cubics() {
    let b = bundled();
    let forms = b.polys("example-forms").unwrap();
    let mats: Vec<_> = forms.iter().map(|f| detcurves::matrix::bilinear_matrix(f).unwrap()).collect();
    let m = LinearFormMatrix::from_forms(&mats).unwrap();
    assert_eq!(m.shape(), (3, 4));
    let minors = maximal_minors(&m).unwrap();
    assert_eq!(minors.span_rank().unwrap(), 4);
    assert!(minors.span_equals(&b.ideal("example-sextic").unwrap()).unwrap());
}

#[test]
fn family_minors_match_printed_cubics_coefficientwise() {
    let b = bundled();
    let m = LinearFormMatrix::from_forms(&b.matrices("s4-pencil").unwrap()).unwrap();
    assert_eq!(m.rows, b.matrices("s4-linear").unwrap()[0]);
    let minors = maximal_minors(&m).unwrap();
    assert_eq!(minors.gens, b.polys("s4-sextic").unwrap());
}

#[test]
fn family_pencil_lambda() {
    let mats = bundled().matrices("s4-pencil").unwrap();
    let p = pencil_determinant(&mats[0], &mats[1], &mats[2]).unwrap();
    let lambda = p.normal_form.unwrap().lambda;
    let printed = Ratio::new(poly("-(2*a^4+2)"), poly("(a^2+1)^2"));
    assert_eq!(lambda, printed);
    assert_eq!(lambda.eval(&at("a", cyc("2"))).unwrap(), cyc("-34/25"));
    // at a = 2 the quartic itself is proportional to x⁴+y⁴+z⁴ + λ(x²y²+x²z²+y²z²)
    let q = p.quartic.eval(&at("a", cyc("2")));
    let target = poly("25*(x^4+y^4+z^4) - 34*(x^2*y^2+x^2*z^2+y^2*z^2)");
    let c = q.coefficient(&poly("x^4").terms().next().unwrap().0.clone()) * cyc("1/25");
    assert_eq!(q, target.scale(&c));
}

#[test]
fn order_48_pencil_is_fermat_after_a_linear_change() {
    let mats = bundled().matrices("fermat-pencil").unwrap();
    let p = pencil_determinant(&mats[0], &mats[1], &mats[2]).unwrap();
    assert!(p.normal_form.is_none());
    assert_eq!(p.quartic, poly("i*((x+z)^4 + y^4 + (x-z)^4)"));
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let change = BTreeMap::from([(x, poly("(x+z)/2")), (y, poly("y")), (z, poly("(x-z)/2"))]);
    let moved = p.quartic.subst(&change);
    assert_eq!(moved, poly("i*(x^4+y^4+z^4)"));
    let id: Vec<Vec<MultiPoly>> =
        (0..4).map(|i| (0..4).map(|j| MultiPoly::from_int((i == j) as i64)).collect()).collect();
    let zero = vec![vec![MultiPoly::zero(); 4]; 4];
    let f = pencil_determinant(&id, &zero, &zero).unwrap();
    assert_eq!(f.quartic, poly("x^4"));
    assert!(f.normal_form.is_none());
}

#[test]
fn family_symmetries() {
    // the two monomial generators preserve the sextic for every a; the two dense ones only at a = 1/2
    let ideal = bundled().ideal("s4-sextic").unwrap();
    let s4 = gens("S4");
    for a in ["2", "3", "-2", "1/3", "i+1"] {
        let fa = ideal.specialize(&at("a", cyc(a)));
        assert!(fa.is_invariant(&s4[0]).unwrap() && fa.is_invariant(&s4[1]).unwrap());
        assert!(!fa.is_invariant(&s4[2]).unwrap() && !fa.is_invariant(&s4[3]).unwrap(), "a = {a}");
    }
    let half = ideal.specialize(&at("a", cyc("1/2")));
    assert!(s4.iter().all(|g| half.is_invariant(g).unwrap()));
    assert!(half.is_invariant(&ProjMatrix::identity()).unwrap());
}

#[test]
fn heart_cubics_at_the_special_value() {
    let b = bundled();
    let u0 = b.points("special-u").unwrap()[0][0].clone();
    assert_eq!(u0, cyc("(-1+r3)/2 + (1-r3)/2*i"));
    let h = b.ideal("heart").unwrap().specialize(&at("u", u0));
    for n in ["M", "N", "A", "B", "C"] {
        assert!(h.is_invariant(&groups::bundled().matrix(n).unwrap()).unwrap(), "{n}");
    }
    let printed = b.ideal("heart-sextic").unwrap();
    assert!(h.span_equals(&printed).unwrap());
    let iota = HomIdeal::in_x(b.map("iota").unwrap().comps).unwrap();
    assert!(iota.span_equals(&printed).unwrap());
}

#[test]
fn heart_cubics_vanish_on_the_symbolic_orbit() {
    let b = bundled();
    let heart = b.ideal("heart").unwrap();
    let g = groups::bundled().group("G").unwrap();
    let p = [MultiPoly::one(), MultiPoly::one(), MultiPoly::one(), MultiPoly::var(var("u"))];
    let orbit = symbolic_orbit(&g, &p);
    assert_eq!(orbit.len(), 16);
    assert!(orbit_vanishing(&orbit, &heart));
    let e0 = detcurves::ideal::poly_point(&"[1:0:0:0]".parse().unwrap());
    assert!(!orbit_vanishing(std::slice::from_ref(&e0), &heart));
    let bind = BTreeMap::from_iter(xvars().into_iter().zip(e0.iter().cloned()));
    assert_eq!(heart.gens[2].subst(&bind), poly("4*u^2"));
    assert!(orbit_vanishing(&orbit, &HomIdeal::in_x(vec![]).unwrap()));
}

#[test]
fn heart_cubics_lie_on_one_elliptic_quartic_when_u4_is_minus_3() {
    let b = bundled();
    let (plus, minus) = (b.ideal("elliptic-plus").unwrap(), b.ideal("elliptic-minus").unwrap());
    let u = var("u");
    for s in ["i*r3", "-i*r3"] {
        assert_eq!(cyc(s).pow(2), cyc("-3"));
        let cubics: Vec<MultiPoly> = b
            .polys("heart")
            .unwrap()
            .iter()
            .map(|f| reduce_power(&reduce_power(f, u, 4, &cyc("-3")), u, 2, &cyc(s)))
            .collect();
        assert!(cubics.iter().all(|f| f.degree_in(u) == 0));
        let inp: Vec<bool> = cubics.iter().map(|f| plus.contains(f).unwrap()).collect();
        let inm: Vec<bool> = cubics.iter().map(|f| minus.contains(f).unwrap()).collect();
        assert!(inp.iter().zip(&inm).all(|(a, b)| a ^ b));
        assert!(inp.iter().all(|&a| a == inp[0]));
        assert_eq!(inp[0], s == "i*r3");
    }
    assert!(!plus.contains(&poly("x0^3")).unwrap());
    assert!(!minus.contains(&poly("x0^3")).unwrap());
}

#[test]
fn iota_is_an_involution() {
    let c = map_self_compose(&bundled().map("iota").unwrap()).unwrap();
    assert!(c.identity);
    assert_eq!(c.factor.unwrap().degree_in_vars(&xvars()), 8);
    let swap = RationalMap::parse(&["x1", "x0", "x3", "x2"]).unwrap();
    assert_eq!(map_self_compose(&swap).unwrap(), Composition { identity: true, factor: Some(MultiPoly::one()) });
    let cycle = RationalMap::parse(&["x1", "x2", "x0", "x3"]).unwrap();
    assert!(!map_self_compose(&cycle).unwrap().identity);
}

#[test]
fn family_cubic_map_is_not_an_involution() {
    let f = bundled().polys("s4-sextic").unwrap();
    for a in ["2", "1/2"] {
        let m = RationalMap::new(f.iter().map(|g| g.eval(&at("a", cyc(a)))).collect()).unwrap();
        assert!(!map_self_compose(&m).unwrap().identity);
    }
}

#[test]
fn plane_quartic_point_counts() {
    let c = bundled().polys("plane-quartic").unwrap().remove(0);
    assert_eq!(finite_field_points(&c, 3).unwrap(), 0);
    assert_eq!(finite_field_points(&poly("x"), 3).unwrap(), 4);
    let fermat = finite_field_points(&poly("x^4+y^4+z^4"), 3).unwrap();
    assert!(fermat > 0);
    // over the 3-element field every nonzero fourth power is 1, so x⁴+y⁴+z⁴ = 0 needs all three nonzero
    assert_eq!(fermat, 4);
}

#[test]
fn tangent_cubics() {
    let b = bundled();
    let c = b.polys("plane-quartic").unwrap().remove(0);
    let pts: Vec<[CycloNum; 3]> =
        b.points("tangency").unwrap().into_iter().map(|p| [p[0].clone(), p[1].clone(), p[2].clone()]).collect();
    assert_eq!(linear_system_with_conditions(3, &c, &[]).unwrap().len(), 10);
    assert_eq!(linear_system_with_conditions(3, &c, &[(pts[0].clone(), 1)]).unwrap().len(), 9);
    // cubics cut a complete series of degree 12 on a genus-3 quartic, so 2k conditions stay independent
    // while 2k ≤ 8 - 1: dimension 10 - 2k
    for k in 1..=4 {
        let conds: Vec<_> = pts.iter().map(|p| (p.clone(), k)).collect();
        assert_eq!(linear_system_with_conditions(3, &c, &conds).unwrap().len(), 10 - 2 * k as usize);
    }
}

#[test]
fn errors() {
    let b = bundled();
    let c = b.polys("plane-quartic").unwrap().remove(0);
    let two_by_four = LinearFormMatrix::new(vec![vec![poly("x0"); 4]; 2], xvars()).unwrap();
    assert!(matches!(maximal_minors(&two_by_four), Err(CurveError::Shape(_))));
    assert!(matches!(LinearFormMatrix::new(vec![vec![poly("x0^2")]], xvars()), Err(CurveError::Inhomogeneous(_))));
    assert!(matches!(
        b.ideal("elliptic-plus").unwrap().contains(&poly("x0^3 + x1")),
        Err(CurveError::Inhomogeneous(_))
    ));
    assert!(matches!(finite_field_points(&poly("3*x^4 + 6*y*z^3"), 3), Err(CurveError::PrimeDividesAll(3))));
    let nodal = poly("y^2*z - x^3 - x^2*z");
    let origin = [cyc("0"), cyc("0"), cyc("1")];
    assert!(matches!(linear_system_with_conditions(3, &nodal, &[(origin, 2)]), Err(CurveError::SingularPoint(_))));
    let off = [cyc("1"), cyc("1"), cyc("1")];
    assert!(matches!(linear_system_with_conditions(3, &c, &[(off, 1)]), Err(CurveError::NotOnCurve(_))));
    assert!(matches!(RationalMap::parse(&["x0", "x1"]), Err(CurveError::Shape(_))));
    assert!(map_self_compose(&RationalMap::parse(&["x0^2", "0", "0", "0"]).unwrap()).is_ok());
    let zero_row = LinearFormMatrix::new(
        vec![vec![MultiPoly::zero(); 4], vec![poly("x1"), poly("x2"), poly("x3"), poly("x0")], vec![poly("x0"); 4]],
        xvars(),
    )
    .unwrap();
    assert!(maximal_minors(&zero_row).unwrap().is_zero());
}

#[test]
fn hermitian_pullbacks() {
    use detcurves::hermitian::*;
    let b = bundled();
    let h1 = trace_form();
    let h2 = RealForm::new(&[(0, 3, 1), (1, 2, 2)]);
    let h3 = RealForm::new(&[(0, 2, 1), (1, 3, 1), (2, 3, 1)]);
    let pulled = HomIdeal::new(vec![h1.pullback(), h2.pullback(), h3.pullback()], [xvars(), yvars()].concat()).unwrap();
    let printed = HomIdeal::new(b.polys("hermitian-pullbacks").unwrap(), [xvars(), yvars()].concat()).unwrap();
    for (p, q) in pulled.gens.iter().zip(&printed.gens) {
        let single = |f: &MultiPoly| HomIdeal::new(vec![f.clone()], [xvars(), yvars()].concat()).unwrap();
        assert!(single(p).span_equals(&single(q)).unwrap());
    }
    assert_eq!(h1.pullback(), printed.gens[0]);
}
