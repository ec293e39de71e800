use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::snf::{snf_core, Track};
use super::{invariant_factors, AbelianGroup, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch: d_out has {out_cols} columns but d_in has {in_rows} rows")]
    ShapeMismatch { in_rows: usize, out_cols: usize },
    #[error("composition d_out * d_in is nonzero")]
    CompositionNonzero,
}

fn check_pair(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<(), ComplexError> {
    if d_out.cols() != d_in.rows() {
        return Err(ComplexError::ShapeMismatch { in_rows: d_in.rows(), out_cols: d_out.cols() });
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)` over Z for the three-term complex `A --d_in--> B --d_out--> C`.
pub fn cohomology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianGroup, ComplexError> {
    check_pair(d_in, d_out)?;
    if !d_out.mul(d_in).is_zero() {
        return Err(ComplexError::CompositionNonzero);
    }
    let n = d_out.cols();
    let w = snf_core(d_out, Track { v: true, ..Track::NONE });
    let r = w.diag.len();
    let v = w.v.unwrap();
    // V maps B onto the SNF coordinates; the last n-r of them parametrize ker(d_out).
    let k = n - r;
    let mut x = IntMatrix::zeros(k, d_in.cols());
    for i in 0..k {
        let vrow = &v[r + i];
        for j in 0..d_in.cols() {
            let s: BigInt = vrow
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(l, a)| a * d_in.get(l, j))
                .sum();
            x.set(i, j, s);
        }
    }
    let f = invariant_factors(&x);
    let free = k - f.len();
    Ok(AbelianGroup::from_orders(free, &f))
}

/// F_p-dimension of the cohomology of the complex reduced mod `p`.
pub fn cohomology_dim_mod_p(d_in: &IntMatrix, d_out: &IntMatrix, p: u64) -> Result<usize, ComplexError> {
    check_pair(d_in, d_out)?;
    let pb = BigInt::from(p);
    if d_out.mul(d_in).entries().iter().any(|x| !(x % &pb).is_zero()) {
        return Err(ComplexError::CompositionNonzero);
    }
    let n = d_out.cols();
    Ok(n - super::rank_mod_p(d_out, p) - super::rank_mod_p(d_in, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_give_free_module() {
        let g = cohomology_at(&IntMatrix::zeros(5, 0), &IntMatrix::zeros(0, 5)).unwrap();
        assert_eq!(g, AbelianGroup::free(5));
    }

    #[test]
    fn multiplication_by_two() {
        let d_in = IntMatrix::from_rows(&[[2]]);
        let d_out = IntMatrix::zeros(0, 1);
        assert_eq!(cohomology_at(&d_in, &d_out).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(cohomology_dim_mod_p(&d_in, &d_out, 2).unwrap(), 1);
        assert_eq!(cohomology_dim_mod_p(&d_in, &d_out, 3).unwrap(), 0);
    }

    #[test]
    fn errors() {
        let a = IntMatrix::from_rows(&[[1]]);
        assert!(matches!(cohomology_at(&a, &a), Err(ComplexError::CompositionNonzero)));
        let b = IntMatrix::zeros(2, 2);
        assert!(matches!(cohomology_at(&a, &b), Err(ComplexError::ShapeMismatch { .. })));
    }
}
