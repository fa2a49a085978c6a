//! The concrete lattices, restriction tables and curve lists used for X.

use exactnum::{int, poly, MultiPoly, Rat};
use num_traits::{Signed, Zero};

use crate::surface::{bilinear, RestrictionTable, SurfaceLattice};
use crate::zariski::Curve;
use crate::LatticeError;

pub const CUBIC: &str = "S";
pub const BLOWN_CUBIC: &str = "S~";
pub const RULED: &str = "E";

fn diag_lattice(name: &str, basis: &[&str]) -> SurfaceLattice {
    let n = basis.len();
    let gram: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i != j { int(0) } else if i == 0 { int(1) } else { int(-1) }).collect())
        .collect();
    SurfaceLattice::from_rat(name, basis, &gram).expect("diagonal Gram")
}

/// Smooth cubic surface as the blow-up of P² in six points: e₀, e₁..e₆.
pub fn cubic_surface() -> SurfaceLattice {
    diag_lattice(CUBIC, &["e0", "e1", "e2", "e3", "e4", "e5", "e6"])
}

/// Its blow-up at a point P, exceptional curve F.
pub fn blown_cubic_surface() -> SurfaceLattice {
    diag_lattice(BLOWN_CUBIC, &["e0", "e1", "e2", "e3", "e4", "e5", "e6", "F"])
}

/// Ruled surface over C₆ with section C₀ (C₀² = −e) and fibre ℓ; `e` stays symbolic.
pub fn ruled_surface() -> SurfaceLattice {
    let gram = vec![vec![poly("-e"), MultiPoly::one()], vec![MultiPoly::one(), MultiPoly::zero()]];
    SurfaceLattice::new(RULED, &["C0", "l"], gram).expect("ruled Gram")
}

fn sum_e(n: usize, k: i64) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(); n];
    for x in v.iter_mut().skip(1).take(6) {
        *x = MultiPoly::from_int(k);
    }
    v
}

fn unit(n: usize, i: usize) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(); n];
    v[i] = MultiPoly::one();
    v
}

/// S ∈ |H|: H|_S = e₀, E|_S = Σeᵢ.
pub fn restriction_to_h() -> RestrictionTable {
    RestrictionTable::new("X", CUBIC).with("H", unit(7, 0)).with("E", sum_e(7, 1))
}

/// S ∈ |H′| read on the swapped lattice: H′|_S = e₀, E′|_S = Σeᵢ.
pub fn restriction_to_h_prime() -> RestrictionTable {
    RestrictionTable::new("X'", CUBIC).with("H'", unit(7, 0)).with("E'", sum_e(7, 1))
}

/// S = E: H|_E = 6ℓ, E|_E = −C₀ + ((28 − e)/2)ℓ.
pub fn restriction_to_e() -> RestrictionTable {
    RestrictionTable::new("X", RULED)
        .with("H", vec![MultiPoly::zero(), MultiPoly::from_int(6)])
        .with("E", vec![MultiPoly::from_int(-1), poly("(28 - e)/2")])
}

/// Pullback from S to its blow-up at P.
pub fn blowup_pullback() -> RestrictionTable {
    let names = ["e0", "e1", "e2", "e3", "e4", "e5", "e6"];
    names.iter().enumerate().fold(RestrictionTable::new(CUBIC, BLOWN_CUBIC), |t, (i, n)| t.with(n, unit(8, i)))
}

/// Generators of the Mori cone of the ruled surface for a given even e.
pub fn ruled_mori_generators(lat: &SurfaceLattice, e: &Rat) -> Result<Vec<Curve>, LatticeError> {
    let l = vec![int(0), int(1)];
    let c = if e.is_negative() { vec![int(1), e / int(2)] } else { vec![int(1), int(0)] };
    let cname = if e.is_negative() { "C0+(e/2)l" } else { "C0" };
    Ok(vec![Curve::on_surface(lat, "l", l)?, Curve::on_surface(lat, cname, c)?])
}

/// All classes C = d·e₀ − Σmᵢeᵢ on the blow-up of P² in n ≤ 7 points with C² = −1 and K·C = −1.
pub fn exceptional_classes(n: usize) -> Vec<Vec<i64>> {
    assert!(n <= 7, "classes of degree > 3 appear from eight points on");
    let mut out = Vec::new();
    for d in 0..=3i64 {
        let mut m = vec![-1i64; n];
        loop {
            let s: i64 = m.iter().sum();
            let q: i64 = m.iter().map(|x| x * x).sum();
            if s == 3 * d - 1 && q == d * d + 1 && m.iter().all(|&x| x <= d) {
                let mut c = vec![d];
                c.extend(m.iter().map(|x| -x));
                out.push(c);
            }
            // odometer over m ∈ {−1..d}ⁿ
            let mut k = 0;
            while k < n && m[k] == d {
                m[k] = -1;
                k += 1;
            }
            if k == n {
                break;
            }
            m[k] += 1;
        }
    }
    out.sort();
    out
}

fn to_rat(c: &[i64]) -> Vec<Rat> {
    c.iter().map(|&x| int(x)).collect()
}

/// Strict mode: every (−1)-class on the lattice (e₀ plus n exceptional basis vectors), minus those
/// meeting a supplied (−2)-curve negatively, plus the (−2)-curves. Classes equal to a named scenario
/// curve take its name.
pub fn strict_curves(
    lat: &SurfaceLattice,
    named: &[(&str, Vec<Rat>)],
    minus_two: &[(&str, Vec<Rat>)],
) -> Result<Vec<Curve>, LatticeError> {
    let g = lat.rat_gram()?;
    let mut out = Vec::new();
    for c in exceptional_classes(lat.rank() - 1) {
        let c = to_rat(&c);
        if minus_two.iter().any(|(_, m)| bilinear(&g, &c, m).is_negative()) {
            continue;
        }
        let name = named
            .iter()
            .find(|(_, v)| *v == c)
            .map(|(n, _)| n.to_string())
            .unwrap_or_else(|| lat.format_class(&c).replace(' ', ""));
        out.push(Curve::on_surface(lat, &name, c)?);
    }
    for (n, m) in minus_two {
        out.push(Curve::on_surface(lat, n, m.clone())?);
    }
    Ok(out)
}

/// Named classes on the blown-up cubic surface (basis e₀..e₆, F).
pub mod classes {
    use super::*;

    fn v(d: i64, m: [i64; 6], f: i64) -> Vec<Rat> {
        let mut c = vec![int(d)];
        c.extend(m.iter().map(|x| int(-x)));
        c.push(int(-f));
        c
    }

    /// F
    pub fn f() -> Vec<Rat> {
        let mut c = vec![Rat::zero(); 8];
        c[7] = int(1);
        c
    }

    /// T̃ = 3e₀ − Σeᵢ − 2F (T singular at P)
    pub fn t() -> Vec<Rat> {
        v(3, [1; 6], 2)
    }

    /// ℓ̃ᵢ = e₀ − eᵢ − F, i = 1..6
    pub fn ell_i(i: usize) -> Vec<Rat> {
        let mut m = [0; 6];
        m[i - 1] = 1;
        v(1, m, 1)
    }

    /// L̃ = Σ ℓ̃ᵢ
    pub fn big_l() -> Vec<Rat> {
        v(6, [1; 6], 6)
    }

    /// R̃ = 8e₀ − 3Σeᵢ − mult·F
    pub fn r(mult: i64) -> Vec<Rat> {
        v(8, [3; 6], mult)
    }

    /// Line case: ℓ̃ = 2e₀ − e₁ − … − e₅ − F, C̃₂ = e₀ − e₆ − F, L̃′ = ℓ̃₁ + … + ℓ̃₅.
    pub fn line() -> Vec<Rat> {
        v(2, [1, 1, 1, 1, 1, 0], 1)
    }

    pub fn conic() -> Vec<Rat> {
        ell_i(6)
    }

    pub fn big_l_prime() -> Vec<Rat> {
        v(5, [1, 1, 1, 1, 1, 0], 5)
    }

    /// Pullback of a class on S: no F component.
    pub fn pullback(c: &[Rat]) -> Vec<Rat> {
        let mut out = c.to_vec();
        out.resize(8, Rat::zero());
        out
    }
}

/// Named curves and (−2)-curves of a scenario, as classes on the blown-up surface.
pub type CurveLists<'a> = (Vec<(&'a str, Vec<Rat>)>, Vec<(&'a str, Vec<Rat>)>);

/// Scenario curve lists on the blown-up cubic surface: (name, class), plus the (−2)-curves.
pub fn no_line_curves() -> CurveLists<'static> {
    let mut v = vec![("T~", classes::t())];
    for (i, n) in ["l1~", "l2~", "l3~", "l4~", "l5~", "l6~"].into_iter().enumerate() {
        v.push((n, classes::ell_i(i + 1)));
    }
    v.push(("F", classes::f()));
    (v, Vec::new())
}

pub fn line_curves() -> CurveLists<'static> {
    let mut v = vec![("C2~", classes::conic())];
    for (i, n) in ["l1~", "l2~", "l3~", "l4~", "l5~"].into_iter().enumerate() {
        v.push((n, classes::ell_i(i + 1)));
    }
    v.push(("F", classes::f()));
    (v, vec![("l~", classes::line())])
}

/// Curves for the engine, either exactly the scenario list or the strict enumeration.
pub fn engine_curves(
    lat: &SurfaceLattice,
    lists: &CurveLists<'_>,
    strict: bool,
) -> Result<Vec<Curve>, LatticeError> {
    let (named, minus_two) = lists;
    if strict {
        return strict_curves(lat, named, minus_two);
    }
    named.iter().chain(minus_two).map(|(n, c)| Curve::on_surface(lat, n, c.clone())).collect()
}

/// f*(P|_S) − v·F on the blown-up cubic surface, for a threefold class P (affine in u) and S ∈ |H|.
pub fn blown_family(x: &crate::ThreefoldLattice, p: &crate::DivisorClass) -> Result<crate::DivisorClass, LatticeError> {
    let on_s = restriction_to_h().restrict_aff(&x.basis, p, None)?;
    let mut d = blowup_pullback().restrict_aff(&cubic_surface().basis, &on_s, None)?;
    d.coeffs[7] = &d.coeffs[7] - &crate::AffineFn2::v();
    Ok(d)
}

/// −K of the blown-up cubic surface: 3e₀ − Σeᵢ − F.
pub fn blown_anticanonical() -> Vec<Rat> {
    let mut c = classes::t();
    c[7] = int(-1);
    c
}

/// An ample class on the ruled surface: C₀ + (max(e, 0) + 1)ℓ.
pub fn ruled_ample_class(e: &Rat) -> Vec<Rat> {
    let k = if e.is_negative() { Rat::zero() } else { e.clone() };
    vec![int(1), k + int(1)]
}
