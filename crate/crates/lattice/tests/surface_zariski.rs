use exactnum::{int, poly, rat, MultiPoly, Rat};
use lattice::catalog::*;
use lattice::zariski::v_upper_bound;
use lattice::*;
use num_traits::Zero;
use proptest::prelude::*;

fn threefold_h() -> (ThreefoldLattice, Decomposition) {
    let x = ThreefoldLattice::standard();
    let fam = x.family_minus_u(&x.class(0));
    let region = Region::interval(int(0), rat(4, 3)).unwrap();
    let dec = zariski_decompose(&x, &fam, &x.zariski_curves(), &region, Default::default()).unwrap();
    (x, dec)
}

/// Decompositions of f*(P(u)|_S) − vF, one per threefold chamber.
fn blown(curves: &[Curve], opts: ZariskiOptions) -> Vec<(DivisorClass, Decomposition)> {
    let (x, d3) = threefold_h();
    let lat = blown_cubic_surface();
    d3.chambers
        .iter()
        .map(|ch| {
            let d = blown_family(&x, &ch.p).unwrap();
            let top = v_upper_bound(&lat, &d, &classes::f(), &blown_anticanonical()).unwrap();
            let reg = Region::new(ch.region.u0.clone(), ch.region.u1.clone(), AffineFn2::zero(), top).unwrap();
            let dec = zariski_decompose(&lat, &d, curves, &reg, opts).unwrap();
            (d, dec)
        })
        .collect()
}

fn aff(s: &str) -> AffineFn2 {
    AffineFn2::try_from(&poly(s)).unwrap()
}

fn bounds(c: &ZariskiChamber) -> (AffineFn2, AffineFn2) {
    (c.region.lo.clone(), c.region.hi.clone())
}

const L_NAMES: [&str; 6] = ["l1~", "l2~", "l3~", "l4~", "l5~", "l6~"];

#[test]
fn no_line_chambers() {
    let lat = blown_cubic_surface();
    let curves = engine_curves(&lat, &no_line_curves(), false).unwrap();
    let parts = blown(&curves, Default::default());
    let a = &parts[0].1.chambers;
    assert_eq!(a.len(), 3);
    assert_eq!(bounds(&a[0]), (aff("0"), aff("(6 - 3*u)/2")));
    assert!(a[0].n.is_empty());
    assert_eq!(lat.volume(&a[0].p), poly("u^2 - v^2 - 8*u + 10"));
    assert_eq!(bounds(&a[1]), (aff("(6 - 3*u)/2"), aff("3 - u")));
    assert_eq!(a[1].n_coeff("T~"), aff("2*v - 6 + 3*u"));
    assert_eq!(a[1].support(), vec!["T~"]);
    assert_eq!(lat.volume(&a[1].p), poly("10*u^2 + 12*u*v + 3*v^2 - 44*u - 24*v + 46"));
    assert_eq!(bounds(&a[2]), (aff("3 - u"), aff("(10 - 4*u)/3")));
    assert_eq!(a[2].n_coeff("T~"), aff("2*v - 6 + 3*u"));
    for n in L_NAMES {
        assert_eq!(a[2].n_coeff(n), aff("v + u - 3"));
    }
    assert_eq!(lat.volume(&a[2].p), poly("(10 - 4*u - 3*v)^2"));
    let f = lat.dual(&classes::f()).unwrap();
    let pf: Vec<AffineFn2> = a.iter().map(|c| c.p.apply(&f)).collect();
    assert_eq!(pf, vec![aff("v"), aff("12 - 6*u - 3*v"), aff("30 - 12*u - 9*v")]);
    assert_eq!(pseff_threshold_surface(&parts[0].1).unwrap().pieces[0].t, aff("(10 - 4*u)/3"));

    let b = &parts[1].1.chambers;
    assert_eq!(b.len(), 2);
    assert_eq!(bounds(&b[0]), (aff("0"), aff("(12 - 9*u)/2")));
    assert_eq!(lat.volume(&b[0].p), poly("27*u^2 - v^2 - 72*u + 48"));
    assert_eq!(b[1].n_coeff("T~"), aff("2*v + 9*u - 12"));
    assert_eq!(lat.volume(&b[1].p), poly("3*(8 - 6*u - v)^2"));
    assert_eq!(pseff_threshold_surface(&parts[1].1).unwrap().pieces[0].t, aff("8 - 6*u"));
}

#[test]
fn no_line_positive_part_matches_the_printed_combination() {
    // P(u,v) = ((20−8u−6v)/3)T̃ + ((1−u)/3)L̃ + ((10−4u−3v)/3)F on the middle chamber
    let lat = blown_cubic_surface();
    let curves = engine_curves(&lat, &no_line_curves(), false).unwrap();
    let parts = blown(&curves, Default::default());
    let p = &parts[0].1.chambers[1].p;
    let want = DivisorClass::zero(BLOWN_CUBIC, 8)
        .add_scaled(&classes::t(), &aff("(20 - 8*u - 6*v)/3"))
        .add_scaled(&classes::big_l(), &aff("(1 - u)/3"))
        .add_scaled(&classes::f(), &aff("(10 - 4*u - 3*v)/3"));
    assert_eq!(p, &want);
}

#[test]
fn line_chambers() {
    let lat = blown_cubic_surface();
    let curves = engine_curves(&lat, &line_curves(), false).unwrap();
    let parts = blown(&curves, Default::default());
    let a = &parts[0].1.chambers;
    assert_eq!(a.len(), 4);
    let his: Vec<AffineFn2> = a.iter().map(|c| c.region.hi.clone()).collect();
    assert_eq!(his, vec![aff("3 - 2*u"), aff("(9 - 4*u)/3"), aff("3 - u"), aff("(10 - 4*u)/3")]);
    assert_eq!(a[1].n_coeff("l~"), aff("(v + 2*u - 3)/2"));
    assert_eq!(a[2].n_coeff("l~"), aff("2*v + 3*u - 6"));
    assert_eq!(a[2].n_coeff("C2~"), aff("3*v + 4*u - 9"));
    assert_eq!(a[3].n_sum(&L_NAMES[..5]), aff("5*(v + u - 3)"));
    let b = &parts[1].1.chambers;
    let his: Vec<AffineFn2> = b.iter().map(|c| c.region.hi.clone()).collect();
    assert_eq!(his, vec![aff("4 - 3*u"), aff("(20 - 15*u)/3"), aff("8 - 6*u")]);
    assert_eq!(b[1].n_coeff("l~"), aff("(v + 3*u - 4)/2"));
    assert_eq!(b[2].n_coeff("l~"), aff("9*u + 2*v - 12"));
    assert_eq!(b[2].n_coeff("C2~"), aff("15*u + 3*v - 20"));
}

#[test]
fn strict_mode_agrees_with_scenario_lists() {
    let lat = blown_cubic_surface();
    for lists in [no_line_curves(), line_curves()] {
        let plain = blown(&engine_curves(&lat, &lists, false).unwrap(), Default::default());
        let strict = blown(&engine_curves(&lat, &lists, true).unwrap(), Default::default());
        for ((_, a), (_, b)) in plain.iter().zip(&strict) {
            assert_eq!(a.chambers.len(), b.chambers.len());
            for (x, y) in a.chambers.iter().zip(&b.chambers) {
                assert_eq!(x.region, y.region);
                assert_eq!(x.p, y.p);
                let mut nx = x.n.clone();
                let mut ny = y.n.clone();
                nx.sort_by(|p, q| p.curve.cmp(&q.curve));
                ny.sort_by(|p, q| p.curve.cmp(&q.curve));
                assert_eq!(nx, ny);
            }
        }
    }
}

#[test]
fn chamber_axioms_continuity_monotonicity() {
    let lat = blown_cubic_surface();
    for lists in [no_line_curves(), line_curves()] {
        let curves = engine_curves(&lat, &lists, true).unwrap();
        for (d, dec) in blown(&curves, Default::default()) {
            for c in &dec.chambers {
                check_chamber(&d, &curves, c).unwrap();
            }
            // shared walls: volumes agree at three points of each wall
            for a in &dec.chambers {
                for b in &dec.chambers {
                    if a.region.u0 == b.region.u0 && a.region.u1 == b.region.u1 && a.region.hi == b.region.lo {
                        for t in [int(0), rat(1, 2), int(1)] {
                            let u = &a.region.u0 + (&a.region.u1 - &a.region.u0) * &t;
                            let v = a.region.hi.eval(&u, &Rat::zero());
                            assert_eq!(lat.volume_at(&a.p.eval(&u, &v)), lat.volume_at(&b.p.eval(&u, &v)));
                        }
                    }
                }
            }
            // volume non-increasing in v and in u at sample points
            for c in &dec.chambers {
                let (u, v) = c.region.interior_point();
                let vol = lat.volume(&c.p);
                let dv = vol.derivative(exactnum::var_index("v").unwrap());
                let du = vol.derivative(exactnum::var_index("u").unwrap());
                let at = |p: &MultiPoly| {
                    let b = [(exactnum::var_index("u").unwrap(), MultiPoly::from_rat(&u)), (exactnum::var_index("v").unwrap(), MultiPoly::from_rat(&v))];
                    p.subst(&b.into_iter().collect()).to_rat().unwrap()
                };
                assert!(at(&dv) <= Rat::zero());
                assert!(at(&du) <= Rat::zero());
            }
            // threshold: the volume vanishes or P meets some curve trivially on the top edge
            let th = pseff_threshold_surface(&dec).unwrap();
            for piece in &th.pieces {
                let u = (&piece.u0 + &piece.u1) / int(2);
                let v = piece.t.eval(&u, &Rat::zero());
                let ch = dec.chambers.iter().find(|c| c.region.contains(&u, &v) && c.region.hi == piece.t).unwrap();
                let p = ch.p.eval(&u, &v);
                assert!(lat.volume_at(&p).is_zero() || curves.iter().any(|c| lat.pair_rat(&p, &c.class).unwrap().is_zero()));
            }
        }
    }
}

#[test]
fn execution_modes_and_refinement_agree() {
    let lat = blown_cubic_surface();
    let curves = engine_curves(&lat, &no_line_curves(), true).unwrap();
    let par = blown(&curves, ZariskiOptions { parallel: true, merge: true });
    let seq = blown(&curves, ZariskiOptions { parallel: false, merge: true });
    assert_eq!(par, seq);
    let raw = blown(&curves, ZariskiOptions { parallel: false, merge: false });
    for ((_, a), (_, b)) in par.iter().zip(&raw) {
        assert!(b.chambers.len() >= a.chambers.len());
        assert_eq!(a.integrate(|c| lat.volume(&c.p)), b.integrate(|c| lat.volume(&c.p)));
    }
    // splitting the input region at u = 1/2 changes nothing after integration
    let (x, d3) = threefold_h();
    let ch = &d3.chambers[0];
    let d = blown_family(&x, &ch.p).unwrap();
    let top = v_upper_bound(&lat, &d, &classes::f(), &blown_anticanonical()).unwrap();
    let whole = Region::new(int(0), int(1), AffineFn2::zero(), top.clone()).unwrap();
    let total = zariski_decompose(&lat, &d, &curves, &whole, Default::default()).unwrap().integrate(|c| lat.volume(&c.p));
    let mut pieces = MultiPoly::zero();
    for (a, b) in [(int(0), rat(1, 2)), (rat(1, 2), int(1))] {
        let r = Region::new(a, b, AffineFn2::zero(), top.clone()).unwrap();
        pieces = &pieces + &zariski_decompose(&lat, &d, &curves, &r, Default::default()).unwrap().integrate(|c| lat.volume(&c.p));
    }
    assert_eq!(total, pieces);
}

#[test]
fn ample_constant_class() {
    let lat = blown_cubic_surface();
    let curves = engine_curves(&lat, &no_line_curves(), true).unwrap();
    let d = DivisorClass::constant(BLOWN_CUBIC, &blown_anticanonical());
    let r = Region::new(int(0), int(1), AffineFn2::zero(), AffineFn2::constant(int(1))).unwrap();
    let dec = zariski_decompose(&lat, &d, &curves, &r, Default::default()).unwrap();
    assert_eq!(dec.chambers.len(), 1);
    assert!(dec.chambers[0].n.is_empty());
}

#[test]
fn ruled_surface_thresholds() {
    let x = ThreefoldLattice::standard();
    let fam = x.family_minus_u(&x.class(1));
    let d3 = zariski_decompose(&x, &fam, &x.zariski_curves(), &Region::interval(int(0), rat(1, 2)).unwrap(), Default::default()).unwrap();
    let r = ruled_surface();
    for e in [-2i64, 0, 2, 4, 6, 8] {
        let e = int(e);
        let rl = r.specialize(&e);
        let cs = ruled_mori_generators(&rl, &e).unwrap();
        let mut th = Vec::new();
        for ch in &d3.chambers {
            let mut d = restriction_to_e().restrict_aff(&x.basis, &ch.p, Some(&e)).unwrap();
            d.coeffs[0] = &d.coeffs[0] - &AffineFn2::v();
            let top = v_upper_bound(&rl, &d, &[int(1), int(0)], &ruled_ample_class(&e)).unwrap();
            let reg = Region::new(ch.region.u0.clone(), ch.region.u1.clone(), AffineFn2::zero(), top).unwrap();
            let dec = zariski_decompose(&rl, &d, &cs, &reg, Default::default()).unwrap();
            // pseudo-effective iff nef: no negative part anywhere
            assert!(dec.chambers.iter().all(|c| c.n.is_empty()));
            th.push(pseff_threshold_surface(&dec).unwrap().pieces[0].t.clone());
        }
        assert_eq!(th, vec![aff("1 + u"), aff("4 - 8*u")]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_surface_families_satisfy_the_axioms(a in 3i64..9, m in proptest::collection::vec(0i64..2, 6), s in -2i64..1) {
        let lat = blown_cubic_surface();
        let curves = engine_curves(&lat, &no_line_curves(), true).unwrap();
        let mut d = DivisorClass::zero(BLOWN_CUBIC, 8);
        d.coeffs[0] = AffineFn2::in_u(int(a), int(s));
        for (i, mi) in m.iter().enumerate() {
            d.coeffs[i + 1] = AffineFn2::constant(int(-mi));
        }
        d.coeffs[7] = AffineFn2::new(Rat::zero(), Rat::zero(), int(-1));
        let top = v_upper_bound(&lat, &d, &classes::f(), &blown_anticanonical()).unwrap();
        prop_assume!(top.eval(&int(0), &Rat::zero()) > Rat::zero() && top.eval(&int(1), &Rat::zero()) > Rat::zero());
        let r = Region::new(int(0), int(1), AffineFn2::zero(), top).unwrap();
        let dec = zariski_decompose(&lat, &d, &curves, &r, Default::default()).unwrap();
        for c in &dec.chambers {
            prop_assert!(check_chamber(&d, &curves, c).is_ok());
        }
        let area: Rat = dec.chambers.iter().map(|c| c.region.area()).chain(dec.not_pseff.iter().map(|b| b.region.area())).sum();
        prop_assert_eq!(area, r.area());
    }
}
