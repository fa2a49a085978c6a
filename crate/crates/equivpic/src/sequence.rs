use std::collections::BTreeSet;

use exactnum::Rat;
use groups::AbelianGroupStructure;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::finite::{abelian_groups_of_order, Elt, Finite};
use crate::signature::PicStructure;
use crate::{PicError, Result};

/// The outer terms Hom(G, ℂ*) and H²(G, ℂ*) of the exact sequence, supplied as inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceData {
    pub hom: AbelianGroupStructure,
    pub h2: AbelianGroupStructure,
}

impl SequenceData {
    pub fn new(hom: &[u64], h2: &[u64]) -> Self {
        SequenceData { hom: AbelianGroupStructure::from_cyclic(0, hom), h2: AbelianGroupStructure::from_cyclic(0, h2) }
    }
}

/// Groups ℤ ⊕ T′ with generator degree deg(γ)/k that contain Pic(G,C)/Hom with quotient H².
///
/// Hom embeds in the torsion of Pic(G,C), giving the image I = ℤ ⊕ T/Hom. An extension A of H² by I
/// splits H² into a subgroup K landing in the torsion of A and a cyclic quotient μ_k absorbed by
/// the free part, so T′ is an extension of K by T/Hom and the free generator has degree deg(γ)/k.
pub fn pic_invariant_candidates(pic: &PicStructure, seq: &SequenceData) -> Result<Vec<PicStructure>> {
    let torsion = Finite::new(&pic.torsion());
    let images = torsion.quotients_by(&seq.hom);
    if images.is_empty() {
        return Err(PicError::NoEmbedding { hom: seq.hom.to_string(), torsion: pic.torsion().to_string() });
    }
    let h2 = Finite::new(&seq.h2);
    let mut splits: BTreeSet<(Vec<u64>, u64)> = BTreeSet::new();
    for k in h2.subgroups() {
        let q = h2.quotient_structure(&k);
        if q.is_cyclic_torsion() {
            splits.insert((h2.structure_of(&k).factors, q.torsion_order()));
        }
    }
    let mut out: Vec<PicStructure> = Vec::new();
    for image in &images {
        let image = AbelianGroupStructure::from_cyclic(0, image);
        for (kernel, k) in &splits {
            let kernel = AbelianGroupStructure::from_cyclic(0, kernel);
            let degree = pic.degree.clone() / Rat::from_integer((*k as i64).into());
            for t in abelian_groups_of_order(image.torsion_order() * kernel.torsion_order()) {
                if Finite::new(&t).quotients_by(&image).contains(&kernel.factors) {
                    let c = PicStructure { group: AbelianGroupStructure { free_rank: 1, factors: t.factors }, degree: degree.clone() };
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| b.degree.cmp(&a.degree).then(a.group.factors.cmp(&b.group.factors)));
    Ok(out)
}

/// External facts used to pick the realized candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    /// An invariant divisor class of this degree exists.
    DivisorOfDegree(u64),
    /// No invariant divisor class of this degree exists.
    NoDivisorOfDegree(u64),
    /// Two distinct invariant theta-characteristics exist.
    ThetaPair,
    /// An invariant degree-2 class D with 2D ≁ K_C exists.
    DegreeTwoNotHalfCanonical,
}

fn divides(deg: &Rat, d: u64) -> bool {
    !deg.is_zero() && (Rat::from_integer((d as i64).into()) / deg).is_integer()
}

impl Fact {
    pub fn holds(&self, p: &PicStructure) -> bool {
        let even_torsion = p.group.torsion_order().is_multiple_of(2);
        match self {
            Fact::DivisorOfDegree(d) => divides(&p.degree, *d),
            Fact::NoDivisorOfDegree(d) => !divides(&p.degree, *d),
            Fact::ThetaPair | Fact::DegreeTwoNotHalfCanonical => divides(&p.degree, 2) && even_torsion,
        }
    }
}

pub fn resolve(candidates: &[PicStructure], facts: &[Fact]) -> Vec<PicStructure> {
    candidates.iter().filter(|c| facts.iter().all(|f| f.holds(c))).cloned().collect()
}

/// Whether an invariant class of degree 2 exists, i.e. 2 is a multiple of the generator degree.
pub fn degree_two_feasible(pic_g: &PicStructure) -> bool {
    divides(&pic_g.degree, 2)
}

/// The finite group (ℤ ⊕ T)/⟨(m, t)⟩ for m > 0, with classes represented by (a, s), 0 ≤ a < m.
pub fn quotient_by_element(pic: &PicStructure, m: u64, t: &Elt) -> AbelianGroupStructure {
    assert!(m > 0, "quotient by a torsion element is infinite");
    let tor = Finite::new(&pic.torsion());
    let neg_t: Elt = t.iter().zip(&tor.mods).map(|(v, md)| (md - v % md) % md).collect();
    let add = |x: &(u64, Elt), y: &(u64, Elt)| {
        let a = x.0 + y.0;
        let s = tor.add(&x.1, &y.1);
        if a >= m {
            (a - m, tor.add(&s, &neg_t))
        } else {
            (a, s)
        }
    };
    let elts: Vec<(u64, Elt)> = (0..m).flat_map(|a| tor.elements().into_iter().map(move |s| (a, s))).collect();
    let zero = (0, tor.zero());
    AbelianGroupStructure::from_torsion_counts(elts.len() as u64, |n| {
        elts.iter()
            .filter(|x| (0..n).fold(zero.clone(), |acc, _| add(&acc, x)) == zero)
            .count() as u64
    })
}
