use exactnum::{cyc, rat, CycloNum, ExactError, Rat};
use proptest::prelude::*;

#[test]
fn named_constants() {
    let two = CycloNum::from_int(2);
    assert_eq!(&CycloNum::r2() * &CycloNum::r2(), two);
    assert_eq!(&CycloNum::r3() * &CycloNum::r3(), CycloNum::from_int(3));
    assert_eq!(&CycloNum::i() * &CycloNum::i(), CycloNum::from_int(-1));
    assert_eq!(cyc("(1+i)*(1-i)"), two);
}

#[test]
fn zeta_has_order_24() {
    let z = CycloNum::zeta();
    assert!(z.pow(24).is_one());
    for k in 1..24 {
        assert!(!z.pow(k).is_one(), "ζ^{k} = 1");
    }
    assert_eq!(CycloNum::zeta_pow(-1), z.pow(23));
}

#[test]
fn conjugation_fixes_real_constants() {
    assert_eq!(CycloNum::i().conj(), -CycloNum::i());
    assert_eq!(CycloNum::r2().conj(), CycloNum::r2());
    assert_eq!(CycloNum::r3().conj(), CycloNum::r3());
    let w = cyc("1/2 - 3*r3*i + r2");
    assert!((&w * &w.conj()).conj() == &w * &w.conj());
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(CycloNum::one().checked_div(&CycloNum::zero()), Err(ExactError::DivisionByZero));
    assert_eq!("1/0".parse::<CycloNum>().unwrap_err(), ExactError::DivisionByZero);
}

#[test]
fn rational_coordinates() {
    let x = cyc("3/4");
    assert_eq!(x.to_rat(), Some(rat(3, 4)));
    assert_eq!(x.norm(), rat(6561, 65536));
    assert_eq!(cyc("r2").norm(), Rat::from_integer(16.into()));
}

#[test]
fn display_forms() {
    assert_eq!(cyc("0").to_string(), "0");
    assert_eq!(cyc("-1/2 + r3*i/2").to_string(), "-1/2 + 1/2*r3*i");
    assert_eq!(cyc("r2*r3").to_string(), "r2*r3");
    assert_eq!(cyc("(1+i)/r2").to_string(), "1/2*r2 + 1/2*r2*i");
}

fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
    proptest::collection::vec((-9i64..10, 1i64..6), 8).prop_map(|v| {
        let c: [Rat; 8] = std::array::from_fn(|k| rat(v[k].0, v[k].1));
        CycloNum::from_coeffs(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_ring_map(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn print_parse_round_trip(a in arb_cyclo()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<CycloNum>().unwrap(), a);
    }
}
