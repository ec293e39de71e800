use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GrpcohError};
use crate::exactla::{kernel_basis_reduced, rank, IntMatrix, Lattice};

/// Version tag of the kernel-plus-greedy construction; part of the cache key.
pub const ALGORITHM_VERSION: &str = "kernel-hnf-maxgain-v1";

/// Order in which kernel basis vectors are offered to the greedy generator selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionOrder {
    #[default]
    Forward,
    Reversed,
}

/// Free `ZG`-resolution `… → F_2 → F_1 → F_0 → Z`.
///
/// `F_k = ZG^{r_k}` with Z-basis `(g, j)` at index `j·|G| + g`. `boundaries[k-1]` is `∂_k : F_k → F_{k-1}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub group: Arc<FiniteGroup>,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
    pub augmentation: IntMatrix,
    pub order: SelectionOrder,
}

/// `g · v` in `ZG^r` under left multiplication.
pub(crate) fn translate(group: &FiniteGroup, g: usize, v: &[BigInt]) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (j, h) = (idx / n, idx % n);
        out[j * n + group.mul(g, h)] = x.clone();
    }
    out
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.boundaries.len()
    }

    /// `∂_k` for `k ≥ 1`; `∂_0` is the augmentation.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        if k == 0 {
            &self.augmentation
        } else {
            &self.boundaries[k - 1]
        }
    }

    /// Builds `length` boundary maps by iterated integer kernels and greedy generator choice.
    pub fn compute(group: Arc<FiniteGroup>, length: usize, order: SelectionOrder) -> Result<Self, GrpcohError> {
        if length == 0 {
            return Err(GrpcohError::ResolutionFailure("length must be at least 1".into()));
        }
        let n = group.order();
        let augmentation = IntMatrix::from_vec(1, n, vec![BigInt::from(1); n]);
        let mut ranks = vec![1];
        let mut boundaries = Vec::with_capacity(length);
        for _ in 0..length {
            let prev = boundaries.last().unwrap_or(&augmentation);
            let dim = prev.cols();
            let mut kernel = kernel_basis_reduced(prev);
            kernel.sort_by_cached_key(|v| {
                let l1: BigInt = v.iter().map(|x| x.abs()).sum();
                (v.iter().filter(|x| !x.is_zero()).count(), l1)
            });
            if order == SelectionOrder::Reversed {
                kernel.reverse();
            }
            let mut span = Lattice::new(dim);
            let mut chosen: Vec<Vec<BigInt>> = Vec::new();
            let mut pending: Vec<&Vec<BigInt>> = kernel.iter().collect();
            loop {
                pending.retain(|v| !span.contains(v));
                if pending.is_empty() {
                    break;
                }
                // largest rank gain, then smallest index of the span, then earliest position
                let mut best: Option<(usize, BigInt, usize, Lattice)> = None;
                for (pos, v) in pending.iter().enumerate() {
                    let mut trial = span.clone();
                    for g in 0..n {
                        trial.insert(&translate(&group, g, v));
                    }
                    let (gain, idx) = (trial.rank(), trial.pivot_product());
                    let better = match &best {
                        None => true,
                        Some((bg, bi, _, _)) => gain > *bg || (gain == *bg && idx < *bi),
                    };
                    if better {
                        best = Some((gain, idx, pos, trial));
                    }
                }
                let (_, _, pos, mut trial) = best.expect("pending is nonempty");
                trial.reduce();
                span = trial;
                chosen.push(pending.remove(pos).clone());
            }
            let mut columns = Vec::with_capacity(chosen.len() * n);
            for c in &chosen {
                for g in 0..n {
                    columns.push(translate(&group, g, c));
                }
            }
            ranks.push(chosen.len());
            boundaries.push(IntMatrix::from_columns(dim, &columns));
        }
        let res = FreeResolution { group, ranks, boundaries, augmentation, order };
        res.verify()?;
        Ok(res)
    }

    /// Checks `∂∂ = 0`, equivariance on generators, and exactness at every internal degree.
    pub fn verify(&self) -> Result<(), GrpcohError> {
        let n = self.group.order();
        let fail = |m: String| Err(GrpcohError::ResolutionFailure(m));
        if self.ranks.len() != self.boundaries.len() + 1 || self.ranks[0] != 1 {
            return fail("rank list does not match boundary count".into());
        }
        if self.augmentation.rows() != 1 || self.augmentation.cols() != n {
            return fail("augmentation has the wrong shape".into());
        }
        for k in 1..=self.length() {
            let d = self.boundary(k);
            if d.rows() != n * self.ranks[k - 1] || d.cols() != n * self.ranks[k] {
                return fail(format!("boundary {k} has shape {}x{}", d.rows(), d.cols()));
            }
            let prev = self.boundary(k - 1);
            if !prev.mul(d).is_zero() {
                return fail(format!("boundary {} composed with boundary {k} is nonzero", k - 1));
            }
            for &s in &self.group.generators {
                for col in 0..d.cols() {
                    let (j, h) = (col / n, col % n);
                    let moved = d.column(j * n + self.group.mul(s, h));
                    if moved != translate(&self.group, s, &d.column(col)) {
                        return fail(format!("boundary {k} is not equivariant"));
                    }
                }
            }
            // exactness at F_{k-1}: ker ∂_{k-1} = im ∂_k
            let kernel = kernel_basis_reduced(prev);
            if kernel.len() != rank(d) {
                return fail(format!("ranks disagree at degree {}", k - 1));
            }
            let mut image = Lattice::new(prev.cols());
            for col in 0..d.cols() {
                image.insert(&d.column(col));
                if col % n == n - 1 {
                    image.reduce();
                }
            }
            if kernel.iter().any(|v| !image.contains(v)) {
                return fail(format!("kernel not contained in image at degree {}", k - 1));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcoh::{cyclic_group, symmetric_group};

    #[test]
    fn c2_ranks_all_one() {
        let r = FreeResolution::compute(Arc::new(cyclic_group(2)), 6, SelectionOrder::Forward).unwrap();
        assert_eq!(r.ranks, vec![1; 7]);
        for d in &r.boundaries {
            assert_eq!((d.rows(), d.cols()), (2, 2));
        }
    }

    #[test]
    fn trivial_group() {
        let r = FreeResolution::compute(Arc::new(symmetric_group(1)), 3, SelectionOrder::Forward).unwrap();
        assert_eq!(r.ranks, vec![1, 0, 0, 0]);
    }

    #[test]
    fn s3_short_resolution_is_exact() {
        let r = FreeResolution::compute(Arc::new(symmetric_group(3)), 5, SelectionOrder::Forward).unwrap();
        assert!(r.ranks.iter().all(|&x| x >= 1));
        r.verify().unwrap();
    }
}
