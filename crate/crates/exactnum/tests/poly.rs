use std::collections::BTreeMap;

use exactnum::{cyc, poly, var_index, CycloNum, ExactError, MultiPoly, Rat};
use proptest::prelude::*;

#[test]
fn substitution() {
    let p = poly("x0^2");
    let q = p.subst_named(&[("x0", poly("x1 + x2"))]).unwrap();
    assert_eq!(q, poly("x1^2 + 2*x1*x2 + x2^2"));
    let f = poly("(1-i)*x0^3 + r2*x1*x2*x3 - 5/3*x3^2*x0");
    let ident: BTreeMap<usize, MultiPoly> =
        (0..4).map(|k| (k, MultiPoly::var(k))).collect();
    assert_eq!(f.subst(&ident), f);
}

#[test]
fn canonical_printing() {
    assert_eq!(poly("x1 + x0^2 - 3").to_string(), "x0^2 + x1 - 3");
    assert_eq!(poly("(1+i)*x0*x1 - x2^3").to_string(), "-x2^3 + (1 + i)*x0*x1");
    assert_eq!(poly("0*x0").to_string(), "0");
    assert_eq!(poly("lambda*a^2").to_string(), "a^2*lambda");
    assert_eq!(poly("λ"), poly("lambda"));
}

#[test]
fn parse_errors_carry_positions() {
    match "x0 + * x1".parse::<MultiPoly>() {
        Err(ExactError::Parse { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("{other:?}"),
    }
    assert!("x0 / x1".parse::<MultiPoly>().is_err());
    assert!("w7".parse::<MultiPoly>().is_err());
    assert!("(x0".parse::<MultiPoly>().is_err());
}

#[test]
fn calculus() {
    let p = poly("u^2*v + 3*v^2");
    let v = var_index("v").unwrap();
    let u = var_index("u").unwrap();
    assert_eq!(p.derivative(v), poly("u^2 + 6*v"));
    assert_eq!(p.antiderivative(v).derivative(v), p);
    // ∫_0^u (u²v + 3v²) dv = u⁴/2 + u³
    assert_eq!(p.integrate(v, &MultiPoly::zero(), &MultiPoly::var(u)), poly("1/2*u^4 + u^3"));
}

#[test]
fn evaluation_at_a_root() {
    let f = poly("x^4 + 4");
    let x = var_index("x").unwrap();
    let root = cyc("1 - i");
    assert!(f.eval(&BTreeMap::from([(x, root)])).is_zero());
    assert_eq!(poly("x0*x1 - 2").eval_point(&[0, 1], &[cyc("r2"), cyc("r2")]), MultiPoly::zero());
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0u16..3, 4),
        -5i64..6,
        1i64..4,
        0usize..8,
    );
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (e, n, d, k) in terms {
            let mut m = [0u16; exactnum::NV];
            m[..4].copy_from_slice(&e);
            m[11] = (k % 2) as u16;
            let c = CycloNum::zeta_pow(k as i64).scale(&Rat::new(n.into(), d.into()));
            p.add_term(m, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_round_trip(p in arb_poly()) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<MultiPoly>().unwrap(), p);
    }

    #[test]
    fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_map(p in arb_poly(), q in arb_poly(), s in arb_poly()) {
        let bind = BTreeMap::from([(1usize, s)]);
        prop_assert_eq!((&p * &q).subst(&bind), &p.subst(&bind) * &q.subst(&bind));
    }
}
