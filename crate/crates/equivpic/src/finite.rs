//! Explicit finite abelian groups μ_{m₁} ⊕ … ⊕ μ_{m_k}, small enough to list elements and subgroups.

use std::collections::{BTreeSet, HashSet};

use groups::abelian::factorize;
use groups::AbelianGroupStructure;

pub type Elt = Vec<u64>;

#[derive(Clone, Debug)]
pub struct Finite {
    pub mods: Vec<u64>,
}

impl Finite {
    pub fn new(a: &AbelianGroupStructure) -> Self {
        Finite { mods: a.factors.clone() }
    }

    pub fn order(&self) -> u64 {
        self.mods.iter().product()
    }

    pub fn zero(&self) -> Elt {
        vec![0; self.mods.len()]
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        a.iter().zip(b).zip(&self.mods).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn elements(&self) -> Vec<Elt> {
        let mut out = vec![self.zero()];
        for (k, &m) in self.mods.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..m).map(move |v| {
                        let mut f = e.clone();
                        f[k] = v;
                        f
                    })
                })
                .collect();
        }
        out
    }

    /// Subgroup generated by a set together with one more element.
    fn extend(&self, s: &BTreeSet<Elt>, g: &Elt) -> BTreeSet<Elt> {
        let mut out = s.clone();
        let mut frontier: Vec<Elt> = s.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y = self.add(&x, g);
            if out.insert(y.clone()) {
                frontier.push(y);
            }
        }
        out
    }

    pub fn subgroups(&self) -> Vec<BTreeSet<Elt>> {
        let elts = self.elements();
        let trivial: BTreeSet<Elt> = [self.zero()].into();
        let mut seen: HashSet<BTreeSet<Elt>> = [trivial.clone()].into();
        let mut frontier = vec![trivial];
        while let Some(s) = frontier.pop() {
            for g in &elts {
                if !s.contains(g) {
                    let t = self.extend(&s, g);
                    if seen.insert(t.clone()) {
                        frontier.push(t);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    fn times(&self, n: u64, x: &Elt) -> Elt {
        x.iter().zip(&self.mods).map(|(v, m)| (v * n) % m).collect()
    }

    pub fn structure_of(&self, s: &BTreeSet<Elt>) -> AbelianGroupStructure {
        let z = self.zero();
        AbelianGroupStructure::from_torsion_counts(s.len() as u64, |n| s.iter().filter(|x| self.times(n, x) == z).count() as u64)
    }

    /// Structure of the quotient by a subgroup: |(G/S)[n]| = #{x : n·x ∈ S} / |S|.
    pub fn quotient_structure(&self, s: &BTreeSet<Elt>) -> AbelianGroupStructure {
        let elts = self.elements();
        let q = self.order() / s.len() as u64;
        AbelianGroupStructure::from_torsion_counts(q, |n| {
            elts.iter().filter(|x| s.contains(&self.times(n, x))).count() as u64 / s.len() as u64
        })
    }

    /// Quotient types G/S over the subgroups S isomorphic to `sub`.
    pub fn quotients_by(&self, sub: &AbelianGroupStructure) -> BTreeSet<Vec<u64>> {
        self.subgroups()
            .iter()
            .filter(|s| s.len() as u64 == sub.torsion_order() && self.structure_of(s) == *sub)
            .map(|s| self.quotient_structure(s).factors)
            .collect()
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|k| {
            partitions(n - k, k).into_iter().map(move |mut p| {
                p.insert(0, k);
                p
            })
        })
        .collect()
}

/// Every finite abelian group of order n, up to isomorphism.
pub fn abelian_groups_of_order(n: u64) -> Vec<AbelianGroupStructure> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factorize(n) {
        out = out
            .into_iter()
            .flat_map(|orders| {
                partitions(e, e).into_iter().map(move |part| {
                    let mut o = orders.clone();
                    o.extend(part.iter().map(|&k| p.pow(k)));
                    o
                })
            })
            .collect();
    }
    out.iter().map(|o| AbelianGroupStructure::from_cyclic(0, o)).collect()
}
