use exactnum::CycloNum;
use groups::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn g() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| bundled().group("G").unwrap())
}

fn coord() -> impl Strategy<Value = CycloNum> {
    (-2i64..3, -2i64..3).prop_map(|(a, b)| CycloNum::from_int(a) + CycloNum::i() * CycloNum::from_int(b))
}

fn point() -> impl Strategy<Value = ProjPoint> {
    [coord(), coord(), coord(), coord()]
        .prop_filter_map("nonzero", |c| ProjPoint::new(c).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbit_stabilizer(p in point()) {
        let g = g();
        let orbit = g.orbit(&p);
        let st = g.stabilizer(&p);
        prop_assert_eq!(orbit.len() * st.order(), g.order());
        // stabilizers along the orbit are conjugate by the transporting element
        let q = orbit.last().unwrap();
        let t = g.transporter(&p, q).unwrap();
        let sq = g.stabilizer(q);
        prop_assert_eq!(sq.order(), st.order());
        for h in st.elements() {
            prop_assert!(sq.contains(&t.conjugate(h)));
        }
    }

    #[test]
    fn orbits_partition(ps in proptest::collection::vec(point(), 1..5)) {
        let g = g();
        let orbits = g.orbits(&ps);
        for (p, o) in ps.iter().zip(&orbits) {
            prop_assert!(o.contains(p));
        }
        for a in &orbits {
            for b in &orbits {
                let meet = a.iter().any(|p| b.contains(p));
                let mut x = a.clone();
                let mut y = b.clone();
                x.sort();
                y.sort();
                prop_assert_eq!(meet, x == y);
            }
        }
    }

    #[test]
    fn generator_order_is_irrelevant(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let gens = bundled().generators("G").unwrap();
        let shuffled: Vec<ProjMatrix> = perm.iter().map(|&k| gens[k].clone()).collect();
        let h = MatrixGroup::enumerate(&shuffled, 48).unwrap();
        prop_assert_eq!(h.element_set(), g().element_set());
    }

    #[test]
    fn abelian_structure_is_canonical(orders in proptest::collection::vec(1u64..40, 0..5)) {
        let a = AbelianGroupStructure::from_cyclic(0, &orders);
        prop_assert_eq!(a.torsion_order(), orders.iter().product::<u64>());
        for w in a.factors.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert!(a.factors.iter().all(|&d| d > 1));
        let mut rev = orders.clone();
        rev.reverse();
        prop_assert_eq!(AbelianGroupStructure::from_cyclic(0, &rev), a);
    }
}

#[test]
fn every_named_orbit_satisfies_orbit_stabilizer() {
    let g = g();
    for p in ["[1:0:0:0]", "[1+i:r2:0:0]", "[1-i:r2:0:0]", "[-1+r3*i:-1-r3*i:2:0]", "[1:1:1:5]", "[2:1:0:0]"] {
        let p: ProjPoint = p.parse().unwrap();
        assert_eq!(g.orbit(&p).len() * g.stabilizer(&p).order(), 48);
    }
}

#[test]
fn group_is_closed() {
    let g = g();
    for a in g.elements().iter().step_by(5) {
        assert!(g.contains(&a.inverse()));
        for b in g.elements().iter().step_by(7) {
            assert!(g.contains(&a.mul(b)));
        }
    }
}

#[test]
fn canonical_forms() {
    let p: ProjPoint = "[2 : 2*i : 0 : 4]".parse().unwrap();
    assert_eq!(p, "[1:i:0:2]".parse().unwrap());
    assert!("[0:0:0:0]".parse::<ProjPoint>().is_err());
    assert!("[1:2:3]".parse::<ProjPoint>().is_err());
    let m = ProjMatrix::diag([3, 3, 3, 3]);
    assert!(m.is_identity());
    let z = [["0"; 4]; 4];
    assert!(matches!(ProjMatrix::from_strs(&z), Err(GroupError::Singular)));
}

#[test]
fn json_round_trip() {
    let b = bundled();
    let js = serde_json::to_string(&b).unwrap();
    let back: Bundle = serde_json::from_str(&js).unwrap();
    assert_eq!(back.matrices, b.matrices);
    let p: ProjPoint = "[1+i:r2:0:0]".parse().unwrap();
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<ProjPoint>(&s).unwrap(), p);
}

#[test]
fn abelian_structure_display() {
    assert_eq!(AbelianGroupStructure::from_cyclic(1, &[2, 2]).to_string(), "Z + mu2 + mu2");
    assert_eq!(AbelianGroupStructure::from_cyclic(0, &[4, 6]).factors, vec![2, 12]);
    assert_eq!(AbelianGroupStructure::trivial().to_string(), "1");
}

#[test]
fn non_splitting_element_is_reported() {
    // rotation by an angle of order 5 has eigenvalues outside the field
    let m = ProjMatrix::from_strs(&[["0", "-1", "0", "0"], ["1", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]])
        .unwrap();
    let h = MatrixGroup::enumerate(&[m], 100).unwrap();
    assert_eq!(h.order(), 6);
    assert!(fixed_locus(&h).is_ok());
    let five = ProjMatrix::from_strs(&[["0", "0", "0", "-1"], ["1", "0", "0", "-1"], ["0", "1", "0", "-1"], ["0", "0", "1", "-1"]])
        .unwrap();
    let h = MatrixGroup::enumerate(&[five], 100).unwrap();
    assert_eq!(h.order(), 5);
    assert!(matches!(fixed_locus(&h), Err(GroupError::NoSplit(_))));
}
