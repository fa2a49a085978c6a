use std::collections::BTreeMap;
use std::sync::OnceLock;

use detcurves::hermitian::*;
use detcurves::*;
use exactnum::*;
use groups::ProjMatrix;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -3i64..4
}

fn gaussian() -> impl Strategy<Value = CycloNum> {
    (small(), small()).prop_map(|(a, b)| CycloNum::from_int(a) + CycloNum::i() * CycloNum::from_int(b))
}

fn example_matrix() -> &'static LinearFormMatrix {
    static M: OnceLock<LinearFormMatrix> = OnceLock::new();
    M.get_or_init(|| {
        let forms = bundled().polys("example-forms").unwrap();
        let mats: Vec<_> = forms.iter().map(|f| detcurves::matrix::bilinear_matrix(f).unwrap()).collect();
        LinearFormMatrix::from_forms(&mats).unwrap()
    })
}

fn special_heart() -> &'static HomIdeal {
    static H: OnceLock<HomIdeal> = OnceLock::new();
    H.get_or_init(|| {
        let b = bundled();
        let u0 = b.points("special-u").unwrap()[0][0].clone();
        b.ideal("heart").unwrap().specialize(&BTreeMap::from([(var("u"), u0)]))
    })
}

fn linear_form() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(small(), 4).prop_map(|c| {
        xvars().iter().zip(c).fold(MultiPoly::zero(), |acc, (&v, k)| &acc + &MultiPoly::var(v).scale(&CycloNum::from_int(k)))
    })
}

fn plane_quartic() -> impl Strategy<Value = MultiPoly> {
    let monos = exactnum::poly::monomials_of_degree(&[var("x"), var("y"), var("z")], 4);
    proptest::collection::vec(-40i64..41, monos.len()).prop_map(move |c| {
        let v: Vec<CycloNum> = c.into_iter().map(CycloNum::from_int).collect();
        MultiPoly::from_coeff_vector(&monos, &v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minors_survive_row_operations(t in proptest::collection::vec(small(), 9)) {
        let t: Vec<Vec<CycloNum>> = t.chunks(3).map(|r| r.iter().map(|&k| CycloNum::from_int(k)).collect()).collect();
        prop_assume!(!linalg::det(&t).is_zero());
        let m = example_matrix();
        let a = maximal_minors(m).unwrap();
        let b = maximal_minors(&m.left_mul(&t)).unwrap();
        prop_assert!(a.span_equals(&b).unwrap());
    }

    #[test]
    fn invariance_extends_to_words(word in proptest::collection::vec(0usize..4, 1..7)) {
        let gb = groups::bundled();
        let gens = gb.generators("G").unwrap();
        let g = word.iter().fold(ProjMatrix::identity(), |acc, &k| acc.mul(&gens[k]));
        prop_assert!(special_heart().is_invariant(&g).unwrap());
    }

    #[test]
    fn multiples_of_generators_are_members(l in linear_form(), k in 0usize..2) {
        let c4 = bundled().ideal("elliptic-plus").unwrap();
        let f = &l * &c4.gens[k];
        prop_assert!(c4.contains(&f).unwrap());
    }

    #[test]
    fn point_counts_agree(f in plane_quartic(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        match (finite_field_points(&f, p), finite_field_points_by_charts(&f, p)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a, b);
                prop_assert!(a <= p * p + p + 1);
            }
            (Err(CurveError::PrimeDividesAll(q)), Err(_)) => prop_assert_eq!(q, p),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn trace_form_is_a_sum_of_squares(z in [gaussian(), gaussian(), gaussian(), gaussian()]) {
        let (a, b) = segre_forms(&z);
        for n in 0..4 {
            let (x, y) = (re(&z[n]).to_rat().unwrap(), im(&z[n]).to_rat().unwrap());
            prop_assert_eq!(a[n][n].to_rat().unwrap(), &x * &x + &y * &y);
            prop_assert!(b[n][n].is_zero());
        }
        let tr = trace_form().eval_at(&z).to_rat().unwrap();
        let zero = z.iter().all(CycloNum::is_zero);
        prop_assert_eq!(tr > Rat::from_integer(0.into()), !zero);
    }

    #[test]
    fn pullback_restricts_to_the_real_form(z in [gaussian(), gaussian(), gaussian(), gaussian()], c in proptest::collection::vec(small(), 3)) {
        let form = RealForm::new(&[(0, 3, c[0]), (1, 2, c[1]), (2, 2, c[2])]);
        let vals: BTreeMap<usize, CycloNum> =
            xvars().into_iter().zip(z.iter().cloned()).chain(yvars().into_iter().zip(z.iter().map(CycloNum::conj))).collect();
        prop_assert_eq!(form.pullback().eval(&vals).to_constant().unwrap_or_default(), form.eval_at(&z));
    }

    #[test]
    fn contact_system_ignores_the_representative(s in 1i64..6, k in 1u32..4) {
        let b = bundled();
        let c = b.polys("plane-quartic").unwrap().remove(0);
        let p = b.points("tangency").unwrap().remove(0);
        let scaled: [CycloNum; 3] = std::array::from_fn(|i| p[i].clone() * CycloNum::from_int(s));
        let orig: [CycloNum; 3] = std::array::from_fn(|i| p[i].clone());
        let a = HomIdeal::new(linear_system_with_conditions(3, &c, &[(orig, k)]).unwrap(), vec![var("x"), var("y"), var("z")]).unwrap();
        let b2 = HomIdeal::new(linear_system_with_conditions(3, &c, &[(scaled, k)]).unwrap(), vec![var("x"), var("y"), var("z")]).unwrap();
        prop_assert_eq!(a.gens.len(), 10 - k as usize);
        prop_assert!(a.span_equals(&b2).unwrap());
    }
}

#[test]
fn json_round_trip() {
    let b = bundled();
    let js = serde_json::to_string(&b).unwrap();
    let back: CurveBundle = serde_json::from_str(&js).unwrap();
    assert_eq!(back.polys("heart").unwrap(), b.polys("heart").unwrap());
    let p = pencil_determinant(&b.matrices("s4-pencil").unwrap()[0], &b.matrices("s4-pencil").unwrap()[1], &b.matrices("s4-pencil").unwrap()[2]).unwrap();
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<Pencil>(&s).unwrap(), p);
    assert!(b.location("heart").unwrap().contains("orbit"));
}
