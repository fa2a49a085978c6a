use exactnum::{int, poly, rat, var_index, MultiPoly, Rat};
use lattice::{
    check_chamber, pseff_threshold_threefold, zariski_decompose, AffineFn2, DivisorClass, IntersectionForm,
    LatticeError, Region, SymClass, ThreefoldLattice,
};
use num_traits::Zero;
use proptest::prelude::*;

fn sym(x: &ThreefoldLattice, h: &str, e: &str) -> SymClass {
    SymClass::new(&x.name, vec![poly(h), poly(e)])
}

#[test]
fn stored_invariants() {
    let x = ThreefoldLattice::standard();
    assert_eq!(x.cube(&x.h_prime()), int(1));
    assert_eq!(x.cube(&x.e_prime()), int(-28));
    assert_eq!(x.cube(&x.anticanonical()), int(20));
    assert_eq!(x.curve_pairing(1, &x.h_prime()), int(0));
    assert_eq!(x.curve_pairing(1, &x.e_prime()), int(-1));
    assert!(ThreefoldLattice::swapped().validate().is_ok());
}

#[test]
fn triple_products() {
    let x = ThreefoldLattice::standard();
    let d = sym(&x, "4 - u", "-1");
    assert_eq!(x.triple_product(&d, &d, &d).unwrap(), poly("-u^3 + 12*u^2 - 30*u + 20"));
    assert_eq!(x.triple_product(&d, &d, &d).unwrap(), poly("(2 - u)*(u^2 - 10*u + 10)"));
    let d = sym(&x, "4", "-(1 + u)");
    assert_eq!(x.triple_product(&d, &d, &d).unwrap(), poly("28*u^3 + 12*u^2 - 60*u + 20"));
    assert_eq!(x.triple_product(&d, &d, &d).unwrap(), poly("4*(1 - u)*(5 - 7*u^2 - 10*u)"));
    let k = sym(&x, "4", "-1");
    assert_eq!(x.triple_product(&k, &k, &k).unwrap(), MultiPoly::from_int(20));
}

#[test]
fn he2_is_forced_by_the_h_family() {
    // (4-u)^3 + 3(4-u)·HE² + 28 must equal (2-u)(u²-10u+10); solve for HE² at u = 0.
    let lhs_at_0 = int(64) + int(28);
    let target = int(20);
    assert_eq!((target - lhs_at_0) / int(12), int(-6));
}

#[test]
fn mismatched_lattice_is_an_error() {
    let x = ThreefoldLattice::standard();
    let y = ThreefoldLattice::swapped();
    let a = sym(&x, "1", "0");
    let b = sym(&y, "1", "0");
    assert!(matches!(x.triple_product(&a, &a, &b), Err(LatticeError::Mismatch(_))));
}

#[test]
fn thresholds() {
    let x = ThreefoldLattice::standard();
    assert_eq!(pseff_threshold_threefold(&x, &x.family_minus_u(&x.class(0))).unwrap(), rat(4, 3));
    assert_eq!(pseff_threshold_threefold(&x, &x.family_minus_u(&x.class(1))).unwrap(), rat(1, 2));
    assert_eq!(pseff_threshold_threefold(&x, &x.family_minus_u(&x.h_prime())).unwrap(), rat(4, 3));
    // never pseudo-effective, and never leaving the cone
    let bad = DivisorClass::new("X", vec![AffineFn2::in_u(int(-1), int(-1)), AffineFn2::zero()]);
    assert!(matches!(pseff_threshold_threefold(&x, &bad), Err(LatticeError::NeverPseff(_))));
    let up = DivisorClass::new("X", vec![AffineFn2::constant(int(4)), AffineFn2::in_u(int(-1), int(1))]);
    assert!(pseff_threshold_threefold(&x, &up).is_err());
}

fn decompose(x: &ThreefoldLattice, s: &[Rat]) -> (Rat, DivisorClass, lattice::Decomposition) {
    let fam = x.family_minus_u(s);
    let tau = pseff_threshold_threefold(x, &fam).unwrap();
    let region = Region::interval(int(0), tau.clone()).unwrap();
    let dec = zariski_decompose(x, &fam, &x.zariski_curves(), &region, Default::default()).unwrap();
    (tau, fam, dec)
}

#[test]
fn h_family_chambers() {
    let x = ThreefoldLattice::standard();
    let (_, fam, dec) = decompose(&x, &x.class(0));
    assert_eq!(dec.chambers.len(), 2);
    assert!(dec.not_pseff.is_empty());
    let c0 = &dec.chambers[0];
    assert_eq!((c0.region.u0.clone(), c0.region.u1.clone()), (int(0), int(1)));
    assert!(c0.n.is_empty());
    let c1 = &dec.chambers[1];
    assert_eq!((c1.region.u0.clone(), c1.region.u1.clone()), (int(1), rat(4, 3)));
    assert_eq!(c1.support(), vec!["E'"]);
    assert_eq!(c1.n_coeff("E'"), AffineFn2::in_u(int(-1), int(1)));
    let want = DivisorClass::new("X", x.h_prime().iter().map(|c| AffineFn2::in_u(int(4), int(-3)).scale(c)).collect());
    assert_eq!(c1.p, want);
    for c in &dec.chambers {
        check_chamber(&fam, &x.zariski_curves(), c).unwrap();
    }
    let u = var_index("u").unwrap();
    let vol: Rat = dec.chambers.iter().map(|c| c.volume(&x).to_upoly(u).unwrap().integrate(&c.region.u0, &c.region.u1)).sum();
    assert_eq!(vol, rat(53, 6));
}

#[test]
fn e_family_chambers() {
    let x = ThreefoldLattice::standard();
    let (tau, fam, dec) = decompose(&x, &x.class(1));
    assert_eq!(tau, rat(1, 2));
    assert_eq!(dec.chambers.len(), 2);
    assert_eq!(dec.chambers[1].region.u0, rat(1, 3));
    assert_eq!(dec.chambers[1].n_coeff("E'"), AffineFn2::in_u(int(-1), int(3)));
    for c in &dec.chambers {
        check_chamber(&fam, &x.zariski_curves(), c).unwrap();
    }
    // P(u) = 4(1-2u)H' on [1/3, 1/2]
    let p = &dec.chambers[1].p;
    let half = rat(1, 2);
    assert_eq!(p.eval(&rat(5, 12), &Rat::zero()), vec![int(2), rat(-2, 3)]);
    assert_eq!(p.eval(&half, &Rat::zero()), vec![Rat::zero(), Rat::zero()]);
    let total = dec.integrate(|c| c.volume(&x)).to_rat().unwrap();
    assert_eq!(total, rat(11, 3));
}

#[test]
fn volume_continuity_monotonicity_and_tau() {
    let x = ThreefoldLattice::standard();
    for s in [x.class(0), x.class(1), x.h_prime()] {
        let (tau, _, dec) = decompose(&x, &s);
        let z = Rat::zero();
        for w in dec.chambers.windows(2) {
            let u = &w[0].region.u1;
            assert_eq!(x.volume_at(&w[0].p.eval(u, &z)), x.volume_at(&w[1].p.eval(u, &z)));
        }
        let mut samples: Vec<Rat> = Vec::new();
        for c in &dec.chambers {
            samples.extend([c.region.u0.clone(), (&c.region.u0 + &c.region.u1) / int(2), c.region.u1.clone()]);
        }
        let vols: Vec<Rat> =
            samples.iter().map(|u| x.volume_at(&dec.chamber_at(u, &z).unwrap().p.eval(u, &z))).collect();
        assert!(vols.windows(2).all(|w| w[0] >= w[1]));
        let last = dec.chambers.last().unwrap();
        assert_eq!(x.volume_at(&last.p.eval(&tau, &z)), Rat::zero());
    }
}

#[test]
fn swapped_lattice_gives_the_same_decomposition() {
    let x = ThreefoldLattice::standard();
    let y = ThreefoldLattice::swapped();
    let (_, _, a) = decompose(&x, &x.class(0));
    let (_, _, b) = decompose(&y, &y.class(0));
    assert_eq!(a.integrate(|c| c.volume(&x)), b.integrate(|c| c.volume(&y)));
    assert_eq!(b.chambers[1].support(), vec!["E"]);
}

#[test]
fn constant_nef_class_has_no_negative_part() {
    let x = ThreefoldLattice::standard();
    let d = DivisorClass::constant("X", &x.anticanonical());
    let region = Region::interval(int(0), int(1)).unwrap();
    let dec = zariski_decompose(&x, &d, &x.zariski_curves(), &region, Default::default()).unwrap();
    assert_eq!(dec.chambers.len(), 1);
    assert!(dec.chambers[0].n.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn chamber_axioms_on_random_families(a in -6i64..12, b in -6i64..6, c in -4i64..4, d in -4i64..4) {
        let x = ThreefoldLattice::standard();
        let fam = DivisorClass::new("X", vec![AffineFn2::in_u(int(a), int(c)), AffineFn2::in_u(int(b), int(d))]);
        let region = Region::interval(int(0), int(1)).unwrap();
        let dec = zariski_decompose(&x, &fam, &x.zariski_curves(), &region, Default::default()).unwrap();
        for ch in &dec.chambers {
            prop_assert!(check_chamber(&fam, &x.zariski_curves(), ch).is_ok());
        }
        // pieces tile [0, 1]
        let mut len = Rat::zero();
        for ch in &dec.chambers { len += &ch.region.u1 - &ch.region.u0; }
        for b in &dec.not_pseff { len += &b.region.u1 - &b.region.u0; }
        prop_assert_eq!(len, int(1));
    }
}
