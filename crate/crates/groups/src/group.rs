use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::abelian::AbelianGroupStructure;
use crate::proj::{ProjMatrix, ProjPoint};
use crate::{GroupError, Result};

/// A finite subgroup of PGL₄ together with all of its elements in canonical form.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<ProjMatrix>,
    elements: Vec<ProjMatrix>,
    index: HashMap<ProjMatrix, usize>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, o: &Self) -> bool {
        self.order() == o.order() && self.elements.iter().all(|g| o.contains(g))
    }
}

impl MatrixGroup {
    /// Breadth-first closure of the generators under right multiplication.
    pub fn enumerate(generators: &[ProjMatrix], cap: usize) -> Result<Self> {
        let id = ProjMatrix::identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in generators {
                let h = elements[k].mul(g);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(MatrixGroup { generators: generators.to_vec(), elements, index })
    }

    pub fn trivial() -> Self {
        Self::enumerate(&[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ProjMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjMatrix] {
        &self.elements
    }

    pub fn contains(&self, g: &ProjMatrix) -> bool {
        self.index.contains_key(g)
    }

    pub fn element_set(&self) -> BTreeSet<ProjMatrix> {
        self.elements.iter().cloned().collect()
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[ProjMatrix]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(GroupError::NotSubgroup(format!("{g} is not in the group")));
        }
        Self::enumerate(gens, self.order())
    }

    /// A subgroup from a full list of its elements, with a small generating set picked greedily.
    fn from_elements(elems: Vec<ProjMatrix>) -> Self {
        let mut gens: Vec<ProjMatrix> = Vec::new();
        let mut sub = Self::trivial();
        for g in &elems {
            if !sub.contains(g) {
                gens.push(g.clone());
                sub = Self::enumerate(&gens, elems.len()).expect("closed element list");
            }
        }
        sub
    }

    pub fn orbit(&self, p: &ProjPoint) -> Vec<ProjPoint> {
        let mut seen = BTreeSet::from([p.clone()]);
        let mut out = vec![p.clone()];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let q = g.apply(&out[k]);
                if seen.insert(q.clone()) {
                    out.push(q);
                }
            }
            k += 1;
        }
        out
    }

    /// Orbits of several points, computed concurrently.
    pub fn orbits(&self, points: &[ProjPoint]) -> Vec<Vec<ProjPoint>> {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            points.par_iter().map(|p| self.orbit(p)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            points.iter().map(|p| self.orbit(p)).collect()
        }
    }

    pub fn stabilizer(&self, p: &ProjPoint) -> Self {
        Self::from_elements(self.elements.iter().filter(|g| g.apply(p) == *p).cloned().collect())
    }

    /// Some element mapping p to q, if q is in the orbit of p.
    pub fn transporter(&self, p: &ProjPoint, q: &ProjPoint) -> Option<ProjMatrix> {
        self.elements.iter().find(|g| g.apply(p) == *q).cloned()
    }

    pub fn commutator_subgroup(&self) -> Self {
        let mut gens: Vec<ProjMatrix> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        loop {
            let d = Self::enumerate(&gens, self.order()).expect("subgroup of a finite group");
            let extra: Vec<ProjMatrix> = self
                .generators
                .iter()
                .flat_map(|g| gens.iter().map(move |h| g.conjugate(h)))
                .filter(|c| !d.contains(c))
                .collect();
            if extra.is_empty() {
                return d;
            }
            gens.extend(extra);
            gens.dedup();
        }
    }

    /// Invariant factors of the abelianization, read off from the orders of elements modulo the
    /// commutator subgroup.
    pub fn abelian_invariants(&self) -> AbelianGroupStructure {
        let d = self.commutator_subgroup();
        let quotient = (self.order() / d.order()) as u64;
        let orders: Vec<u64> = self
            .elements
            .iter()
            .map(|g| {
                let mut acc = g.clone();
                let mut k = 1;
                while !d.contains(&acc) {
                    acc = acc.mul(g);
                    k += 1;
                }
                k
            })
            .collect();
        let dn = d.order() as u64;
        AbelianGroupStructure::from_torsion_counts(quotient, |m| {
            orders.iter().filter(|&&k| m % k == 0).count() as u64 / dn
        })
    }

    /// Number of elements of each projective order.
    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for g in &self.elements {
            *h.entry(g.order()).or_insert(0) += 1;
        }
        h
    }

    /// Distinct subgroups g·H·g⁻¹ for g in the group.
    pub fn conjugate_subgroups(&self, h: &Self) -> Result<Vec<BTreeSet<ProjMatrix>>> {
        if let Some(x) = h.elements.iter().find(|x| !self.contains(x)) {
            return Err(GroupError::NotSubgroup(format!("{x} is not in the group")));
        }
        let mut out: Vec<BTreeSet<ProjMatrix>> = Vec::new();
        for g in &self.elements {
            let c: BTreeSet<ProjMatrix> = h.elements.iter().map(|x| g.conjugate(x)).collect();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Orders of all normal subgroups, found as unions of conjugacy classes closed under products.
    pub fn normal_subgroup_orders(&self) -> Vec<usize> {
        let classes = self.conjugacy_classes();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0])];
        while let Some(s) = stack.pop() {
            if !found.insert(s.clone()) {
                continue;
            }
            for c in &classes {
                if c.iter().all(|k| s.contains(k)) {
                    continue;
                }
                let gens: Vec<ProjMatrix> = s.iter().chain(c).map(|&k| self.elements[k].clone()).collect();
                let n = Self::enumerate(&gens, self.order()).expect("subgroup");
                stack.push(n.elements.iter().map(|g| self.index[g]).collect());
            }
        }
        let mut orders: Vec<usize> = found.iter().map(BTreeSet::len).collect();
        orders.sort_unstable();
        orders
    }

    pub fn conjugacy_classes(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for k in 0..self.order() {
            if seen[k] {
                continue;
            }
            let class: BTreeSet<usize> =
                self.elements.iter().map(|g| self.index[&g.conjugate(&self.elements[k])]).collect();
            for &j in &class {
                seen[j] = true;
            }
            out.push(class);
        }
        out
    }
}

/// Whether H is normal in G; H must be a subgroup of G.
pub fn is_normal(h: &MatrixGroup, g: &MatrixGroup) -> Result<bool> {
    if let Some(x) = h.elements.iter().find(|x| !g.contains(x)) {
        return Err(GroupError::NotSubgroup(format!("{x} is not in the ambient group")));
    }
    Ok(g.generators.iter().all(|s| h.generators.iter().all(|t| h.contains(&s.conjugate(t)))))
}
