use groups::*;

fn pt(s: &str) -> ProjPoint {
    s.parse().unwrap()
}

fn g() -> MatrixGroup {
    bundled().group("G").unwrap()
}

fn m(name: &str) -> ProjMatrix {
    bundled().matrix(name).unwrap()
}

fn points(locus: &[Subspace]) -> Vec<ProjPoint> {
    locus.iter().map(|s| s.point().expect("isolated point")).collect()
}

fn same_set(mut a: Vec<ProjPoint>, mut b: Vec<ProjPoint>) -> bool {
    a.sort();
    b.sort();
    a == b
}

#[test]
fn group_orders() {
    let b = bundled();
    assert_eq!(g().order(), 48);
    assert_eq!(b.group("G192").unwrap().order(), 192);
    assert_eq!(b.group("AutC4").unwrap().order(), 96);
    assert_eq!(MatrixGroup::enumerate(&[ProjMatrix::identity()], 1).unwrap().order(), 1);
    assert!(matches!(MatrixGroup::enumerate(&b.generators("G").unwrap(), 47), Err(GroupError::CapExceeded(47))));
}

#[test]
fn c_is_the_printed_word() {
    let (a, n, b, mm) = (m("A"), m("N"), m("B"), m("M"));
    assert_eq!(a.mul(&n).mul(&b).mul(&mm).mul(&a.pow(2)), m("C"));
    // the displayed matrix is the complex conjugate of the word; it still lies in G, but then
    // <CB> is conjugate to <B> and its fixed points are the conjugates of the listed ones
    let printed = m("C-printed");
    assert_ne!(printed, m("C"));
    let g = g();
    assert!(g.contains(&printed));
    let b = g.subgroup(&[m("B")]).unwrap();
    let cb = g.subgroup(&[printed.mul(&m("B"))]).unwrap();
    assert!(g.conjugate_subgroups(&b).unwrap().contains(&cb.element_set()));
    assert!(fixed_locus(&cb).unwrap().iter().any(|s| s.contains(&pt("[r2:0:1+i:0]"))));
}

#[test]
fn normal_subgroup_of_order_16() {
    let g = g();
    let bc = g.subgroup(&[m("B"), m("C")]).unwrap();
    assert_eq!(bc.order(), 16);
    assert_eq!(bc.abelian_invariants(), AbelianGroupStructure::from_cyclic(0, &[4, 4]));
    assert!(is_normal(&bc, &g).unwrap());
    assert!(!is_normal(&g.subgroup(&[m("A")]).unwrap(), &g).unwrap());
    let big = bundled().group("G192").unwrap();
    assert!(is_normal(&g, &big).unwrap());
    assert!(is_normal(&bc, &big).is_ok());
    // G has index 2 in Aut(P3, C4), which is not inside G
    let aut = bundled().group("AutC4").unwrap();
    assert!(is_normal(&g, &aut).unwrap());
    assert!(is_normal(&aut, &g).is_err());
}

#[test]
fn abelianization_of_g_is_mu3() {
    assert_eq!(g().abelian_invariants(), AbelianGroupStructure::cyclic(3));
    assert!(MatrixGroup::trivial().abelian_invariants().is_trivial());
}

#[test]
fn orbit_lengths() {
    let g = g();
    let reps = [
        ("[1:0:0:0]", 4),
        ("[1+i:r2:0:0]", 12),
        ("[1-i:r2:0:0]", 12),
        ("[-1+r3*i:-1-r3*i:2:0]", 16),
        ("[-1-r3*i:-1+r3*i:2:0]", 16),
        ("[1:1:1:5]", 16),
        ("[2:1:0:0]", 24),
    ];
    for (p, n) in reps {
        assert_eq!(g.orbit(&pt(p)).len(), n, "{p}");
    }
    let s12 = g.orbit(&pt("[1+i:r2:0:0]"));
    let s12p = g.orbit(&pt("[1-i:r2:0:0]"));
    assert!(s12.iter().all(|p| !s12p.contains(p)));
    // the excluded values of t give the two orbits of length 12
    assert_eq!(g.orbit(&pt("[2:r2+r2*i:0:0]")).len(), 12);
}

#[test]
fn stabilizers() {
    let g = g();
    let s = g.stabilizer(&pt("[1:0:0:0]"));
    assert_eq!(s.order(), 12);
    assert_eq!(s.abelian_invariants(), AbelianGroupStructure::cyclic(3));
    assert_eq!(g.stabilizer(&pt("[2:1:0:0]")).order(), 2);
    assert_eq!(MatrixGroup::trivial().stabilizer(&pt("[1:2:3:4]")).order(), 1);
}

#[test]
fn conjugacy_counts_of_the_listed_subgroups() {
    let g = g();
    let count = |gens: &[&str]| {
        let h = g.subgroup(&gens.iter().map(|n| m(n)).collect::<Vec<_>>()).unwrap();
        (h.order(), g.conjugate_subgroups(&h).unwrap().len())
    };
    assert_eq!(count(&["B", "C"]), (16, 1));
    assert_eq!(count(&["A", "M", "N"]), (12, 4));
    assert_eq!(count(&["B", "M", "N"]), (8, 3));
    assert_eq!(count(&["M", "N"]), (4, 1));
    assert_eq!(count(&["B"]), (4, 3));
    assert_eq!(count(&["A"]), (3, 16));
    assert_eq!(count(&["M"]), (2, 3));
    let cb = m("C").mul(&m("B"));
    let b = g.subgroup(&[m("B")]).unwrap();
    let cbg = g.subgroup(&[cb]).unwrap();
    assert_eq!(cbg.order(), 4);
    assert!(!g.conjugate_subgroups(&b).unwrap().contains(&cbg.element_set()));
}

#[test]
fn fixed_points_of_b_and_cb() {
    let g = g();
    let b = fixed_locus(&g.subgroup(&[m("B")]).unwrap()).unwrap();
    let want = ["[1+i:r2:0:0]", "[1+i:-r2:0:0]", "[0:0:r2:1+i]", "[0:0:-r2:1+i]"];
    assert!(same_set(points(&b), want.iter().map(|s| pt(s)).collect()));
    let s12 = g.orbit(&pt("[1+i:r2:0:0]"));
    assert!(points(&b).iter().all(|p| s12.contains(p)));

    let cb = fixed_locus(&g.subgroup(&[m("C").mul(&m("B"))]).unwrap()).unwrap();
    let want = ["[r2:0:1-i:0]", "[-r2:0:1-i:0]", "[0:r2:0:1-i]", "[0:-r2:0:1-i]"];
    assert!(same_set(points(&cb), want.iter().map(|s| pt(s)).collect()));
    let s12p = g.orbit(&pt("[1-i:r2:0:0]"));
    assert!(points(&cb).iter().all(|p| s12p.contains(p)));
}

#[test]
fn fixed_points_of_a() {
    let g = g();
    let fa = fixed_locus(&g.subgroup(&[m("A")]).unwrap()).unwrap();
    let isolated: Vec<ProjPoint> = fa.iter().filter_map(Subspace::point).collect();
    assert!(same_set(isolated, vec![pt("[-1+r3*i:-1-r3*i:2:0]"), pt("[-1-r3*i:-1+r3*i:2:0]")]));
    let lines: Vec<&Subspace> = fa.iter().filter(|s| s.dim() == 1).collect();
    assert_eq!(lines.len(), 1);
    for p in ["[1:1:1:0]", "[1:1:1:7]", "[1:1:1:i]", "[0:0:0:1]"] {
        assert!(lines[0].contains(&pt(p)), "{p}");
    }
}

#[test]
fn groups_without_fixed_points() {
    let g = g();
    assert!(fixed_locus(&g).unwrap().is_empty());
    for gens in [vec!["B", "C"], vec!["B", "M", "N"]] {
        let h = g.subgroup(&gens.iter().map(|n| m(n)).collect::<Vec<_>>()).unwrap();
        assert!(fixed_locus(&h).unwrap().is_empty(), "{gens:?}");
    }
    let mn = fixed_locus(&g.subgroup(&[m("M"), m("N")]).unwrap()).unwrap();
    let s4 = g.orbit(&pt("[1:0:0:0]"));
    assert!(points(&mn).iter().all(|p| s4.contains(p)));
}

#[test]
fn fixed_point_of_the_a4_copy() {
    let g = g();
    let h = g.subgroup(&[m("A"), m("M"), m("N")]).unwrap();
    let f = points(&fixed_locus(&h).unwrap());
    assert_eq!(f.len(), 1);
    assert!(g.orbit(&pt("[1:0:0:0]")).contains(&f[0]));
    // the printed point is fixed by a conjugate copy: its stabilizer
    let st = g.stabilizer(&pt("[1:0:0:0]"));
    assert_eq!(g.conjugate_subgroups(&h).unwrap().iter().filter(|c| **c == st.element_set()).count(), 1);
    assert_eq!(points(&fixed_locus(&st).unwrap()), vec![pt("[1:0:0:0]")]);
    assert_eq!(f, vec![pt("[0:0:0:1]")]);
}

#[test]
fn fixed_lines_of_involutions() {
    let g = g();
    let x01 = Subspace::span(&[pt("[0:0:1:0]").coords().clone(), pt("[0:0:0:1]").coords().clone()]);
    let x23 = Subspace::span(&[pt("[1:0:0:0]").coords().clone(), pt("[0:1:0:0]").coords().clone()]);
    let mn = m("M").mul(&m("N"));
    let mut f = fixed_locus(&g.subgroup(&[mn]).unwrap()).unwrap();
    f.sort();
    let mut want = vec![x01, x23];
    want.sort();
    assert_eq!(f, want);
    // the literal M fixes the lines {x0 = x2 = 0} and {x1 = x3 = 0}, an A-conjugate pair
    let fm = fixed_locus(&g.subgroup(&[m("M")]).unwrap()).unwrap();
    assert_eq!(fm.len(), 2);
    assert!(fm.iter().all(|s| s.dim() == 1));
    assert!(fm.iter().any(|s| s.contains(&pt("[0:1:0:0]")) && s.contains(&pt("[0:0:0:1]"))));
    assert!(fm.iter().any(|s| s.contains(&pt("[1:0:0:0]")) && s.contains(&pt("[0:0:1:0]"))));
}

#[test]
fn lemma_s4_fingerprint() {
    let s4 = bundled().group("S4").unwrap();
    assert_eq!(s4.order(), 24);
    assert_eq!(s4.abelian_invariants(), AbelianGroupStructure::cyclic(2));
    let h = s4.order_histogram();
    assert_eq!((h[&2], h[&3], h[&4]), (9, 8, 6));
}

#[test]
fn fingerprint_of_g() {
    let g = g();
    let h = g.order_histogram();
    assert_eq!(h.values().sum::<usize>(), 48);
    assert_eq!(g.normal_subgroup_orders(), vec![1, 4, 16, 48]);
}
