use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{invariant_factors, IntMatrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "super::matrix::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(0, &[n])
    }

    /// Canonical form of `Z^free ⊕ ⊕ Z/n_i`; orders of 0 count as free, orders of 1 vanish.
    pub fn new(free_rank: usize, orders: &[u64]) -> Self {
        let orders: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        Self::from_orders(free_rank, &orders)
    }

    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let extra_free = orders.iter().filter(|n| n.is_zero()).count();
        let diag: Vec<BigInt> = orders.iter().filter(|n| !n.is_zero()).cloned().collect();
        let mut m = IntMatrix::zeros(diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        let torsion = invariant_factors(&m).into_iter().filter(|e| !e.is_one()).collect();
        AbelianGroup { free_rank: free_rank + extra_free, torsion }
    }

    /// Elementary abelian `(Z/p)^k` plus a free part.
    pub fn elementary(free_rank: usize, p: u64, k: usize) -> Self {
        AbelianGroup { free_rank, torsion: vec![BigInt::from(p); k] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Free part plus the `p`-power torsion.
    pub fn p_primary(&self, p: u64) -> AbelianGroup {
        let pb = BigInt::from(p);
        let mut torsion = Vec::new();
        for e in &self.torsion {
            let mut e = e.clone();
            let mut part = BigInt::one();
            while (&e % &pb).is_zero() {
                e /= &pb;
                part *= &pb;
            }
            if !part.is_one() {
                torsion.push(part);
            }
        }
        AbelianGroup { free_rank: self.free_rank, torsion }
    }

    /// Number of cyclic summands of `p`-power order in the primary decomposition.
    pub fn p_rank(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        self.torsion.iter().filter(|e| (*e % &pb).is_zero()).count()
    }

    /// True when every torsion factor is exactly `p`.
    pub fn is_elementary(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.torsion.iter().all(|e| *e == pb)
    }

    pub fn order_of_torsion(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).expect("torsion factor exceeds u64")).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(AbelianGroup::new(0, &[2, 3]), AbelianGroup::cyclic(6));
        assert_eq!(AbelianGroup::new(1, &[1, 0]), AbelianGroup::free(2));
        let g = AbelianGroup::new(0, &[4, 6]);
        assert_eq!(g.torsion_u64(), vec![2, 12]);
    }

    #[test]
    fn primary_parts() {
        let z6 = AbelianGroup::cyclic(6);
        assert_eq!(z6.p_primary(3), AbelianGroup::cyclic(3));
        assert_eq!(z6.p_primary(2), AbelianGroup::cyclic(2));
        assert_eq!(AbelianGroup::free(1).p_primary(5), AbelianGroup::free(1));
        assert_eq!(AbelianGroup::cyclic(2).p_primary(3), AbelianGroup::zero());
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::zero().to_string(), "0");
        assert_eq!(AbelianGroup::new(2, &[3, 3]).to_string(), "Z^2 + (Z/3)^2");
        assert_eq!(AbelianGroup::new(1, &[6]).to_string(), "Z + Z/6");
    }
}
