use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// ℤʳ ⊕ μ_{d₁} ⊕ … ⊕ μ_{d_k} with d₁ | d₂ | … and every dᵢ > 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupStructure {
    pub free_rank: u32,
    pub factors: Vec<u64>,
}

/// Prime factorization as (p, k) pairs in increasing p.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic(0, &[n])
    }

    /// Canonical form of ℤʳ ⊕ ⊕ μ_{nᵢ} for arbitrary nᵢ ≥ 1.
    pub fn from_cyclic(free_rank: u32, orders: &[u64]) -> Self {
        let mut primes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            assert!(n > 0, "cyclic factor of order 0; use free_rank");
            for (p, k) in factorize(n) {
                primes.entry(p).or_default().push(p.pow(k));
            }
        }
        Self::from_primary(free_rank, primes)
    }

    fn from_primary(free_rank: u32, mut primes: BTreeMap<u64, Vec<u64>>) -> Self {
        let len = primes.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in primes.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in powers.iter().enumerate() {
                factors[len - 1 - k] *= q;
            }
        }
        factors.retain(|&d| d > 1);
        AbelianGroupStructure { free_rank, factors }
    }

    /// The finite abelian group A from the sizes |A[m]| of its m-torsion, for every m dividing |A|.
    pub fn from_torsion_counts(order: u64, torsion: impl Fn(u64) -> u64) -> Self {
        let mut primes = BTreeMap::new();
        for (p, e) in factorize(order) {
            let logs: Vec<u32> = (0..=e)
                .map(|j| {
                    let n = torsion(p.pow(j));
                    factorize(n).first().map_or(0, |&(q, k)| {
                        debug_assert_eq!(q, p);
                        k
                    })
                })
                .collect();
            let mut powers = Vec::new();
            for j in 1..=e as usize {
                let at_least_j = logs[j] - logs[j - 1];
                let at_least_next = if j < e as usize { logs[j + 1] - logs[j] } else { 0 };
                for _ in 0..at_least_j - at_least_next {
                    powers.push(p.pow(j as u32));
                }
            }
            primes.insert(p, powers);
        }
        Self::from_primary(0, primes)
    }

    pub fn torsion_order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn is_cyclic_torsion(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Sum with another structure.
    pub fn plus(&self, o: &Self) -> Self {
        let all: Vec<u64> = self.factors.iter().chain(&o.factors).copied().collect();
        Self::from_cyclic(self.free_rank + o.free_rank, &all)
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.factors.iter().map(|d| format!("mu{d}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
