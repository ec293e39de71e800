use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::poly::{format_monomial, format_terms, Monomial, Polynomial};
use super::{CoinvError, CoinvariantAlgebra, CoinvariantElement, Scalar};
use crate::exactla::rank_rational;
use crate::grpcoh::{symmetric_group, FiniteGroup, Permutation};

/// Element of `H*(Fl_n) ⊗ H*(Fl_n)`, keyed by pairs of staircase exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorClass<R> {
    n: usize,
    coefficients: BTreeMap<(Monomial, Monomial), R>,
}

impl<R: Scalar> TensorClass<R> {
    pub fn zero(n: usize) -> Self {
        TensorClass { n, coefficients: BTreeMap::new() }
    }

    pub fn coefficients(&self) -> &BTreeMap<(Monomial, Monomial), R> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn add_term(&mut self, key: (Monomial, Monomial), c: R) {
        let v = self.coefficients.remove(&key).unwrap_or_else(R::zero) + c;
        if !v.is_zero() {
            self.coefficients.insert(key, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coefficients {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.coefficients {
            out.add_term(key.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Cohomological bidegrees present, sorted.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .coefficients
            .keys()
            .map(|(a, b)| (2 * a.iter().sum::<u32>(), 2 * b.iter().sum::<u32>()))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Total cohomological degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut totals: Vec<u32> = self.bidegrees().iter().map(|(a, b)| a + b).collect();
        totals.dedup();
        match totals.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

impl<R: Scalar> fmt::Display for TensorClass<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coefficients
            .iter()
            .map(|((a, b), c)| (format!("{}⊗{}", format_monomial(a, None), tensor_right(b)), c));
        write!(f, "{}", format_terms(terms))
    }
}

fn tensor_right(m: &[u32]) -> String {
    format_monomial(m, None).replace('x', "y")
}

/// Serializable view of a tensor class.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TensorReport {
    pub bidegrees: Vec<(u32, u32)>,
    pub text: String,
}

impl<R: Scalar> From<&TensorClass<R>> for TensorReport {
    fn from(t: &TensorClass<R>) -> Self {
        TensorReport { bidegrees: t.bidegrees(), text: t.to_string() }
    }
}

/// `H*(Fl_n) ⊗ H*(Fl_n)` with the diagonal `Σ_n`-action.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    algebra: CoinvariantAlgebra,
    group: Arc<FiniteGroup>,
}

impl TensorAlgebra {
    pub fn new(n: usize) -> Result<Self, CoinvError> {
        let algebra = CoinvariantAlgebra::new(n)?;
        Ok(TensorAlgebra { algebra, group: Arc::new(symmetric_group(n)) })
    }

    pub fn algebra(&self) -> &CoinvariantAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn one<R: Scalar>(&self) -> TensorClass<R> {
        let z = vec![0; self.n()];
        self.pure(&z, &z)
    }

    /// Class of `x^a ⊗ y^b`.
    pub fn pure<R: Scalar>(&self, a: &[u32], b: &[u32]) -> TensorClass<R> {
        self.tensor(&self.algebra.monomial(a), &self.algebra.monomial(b))
    }

    pub fn tensor<R: Scalar>(&self, a: &CoinvariantElement<R>, b: &CoinvariantElement<R>) -> TensorClass<R> {
        let mut out = TensorClass::zero(self.n());
        for (ma, ca) in a.coefficients() {
            for (mb, cb) in b.coefficients() {
                out.add_term((ma.clone(), mb.clone()), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Reduces a polynomial in `x1..xn, y1..yn` (2n variables) into the tensor product.
    pub fn from_polynomial<R: Scalar>(&self, p: &Polynomial<R>) -> TensorClass<R> {
        let n = self.n();
        assert_eq!(p.nvars(), 2 * n, "expected variables x1..xn, y1..yn");
        let mut out = TensorClass::zero(n);
        for (m, c) in p.terms() {
            let t = self.pure::<R>(&m[..n], &m[n..]).scale(c);
            out = out.add(&t);
        }
        out
    }

    pub fn multiply<R: Scalar>(&self, a: &TensorClass<R>, b: &TensorClass<R>) -> TensorClass<R> {
        let mut out = TensorClass::zero(self.n());
        for ((a1, a2), x) in &a.coefficients {
            for ((b1, b2), y) in &b.coefficients {
                let left: Monomial = a1.iter().zip(b1).map(|(i, j)| i + j).collect();
                let right: Monomial = a2.iter().zip(b2).map(|(i, j)| i + j).collect();
                out = out.add(&self.pure::<R>(&left, &right).scale(&(x.clone() * y.clone())));
            }
        }
        out
    }

    /// Diagonal action `f(x, y) ↦ f(ωx, ωy)`.
    pub fn act<R: Scalar>(&self, omega: &Permutation, a: &TensorClass<R>) -> TensorClass<R> {
        let mut out = TensorClass::zero(self.n());
        for ((l, r), c) in &a.coefficients {
            let left = self.algebra.act(omega, &self.algebra.monomial::<R>(l));
            let right = self.algebra.act(omega, &self.algebra.monomial::<R>(r));
            out = out.add(&self.tensor(&left, &right).scale(c));
        }
        out
    }

    /// `ρ(f) = (1/|Σ_n|) Σ_ω f(ωx, ωy)`.
    pub fn averaging<R: Scalar>(&self, f: &TensorClass<R>) -> Result<TensorClass<R>, CoinvError> {
        let order = self.group.order() as i64;
        let inv = R::one().div_integer(order).ok_or(CoinvError::NonRationalScalars { ring: R::RING.to_string() })?;
        let mut sum = TensorClass::zero(self.n());
        for omega in &self.group.elements {
            sum = sum.add(&self.act(omega, f));
        }
        Ok(sum.scale(&inv))
    }

    /// `f_ω = Π_{ω⁻¹(i) > ω⁻¹(i+1)} (x_1⋯x_i) ⊗ Π_{ω(j) > ω(j+1)} (y_{ω(1)}⋯y_{ω(j)})`.
    pub fn descent_monomial<R: Scalar>(&self, omega: &Permutation) -> TensorClass<R> {
        let n = self.n();
        let w = &omega.0;
        let inv = omega.inverse();
        let mut left = vec![0u32; n];
        let mut right = vec![0u32; n];
        for i in 0..n.saturating_sub(1) {
            if inv.0[i] > inv.0[i + 1] {
                for e in left.iter_mut().take(i + 1) {
                    *e += 1;
                }
            }
            if w[i] > w[i + 1] {
                for &k in &w[..=i] {
                    right[k] += 1;
                }
            }
        }
        self.pure(&left, &right)
    }

    /// Full basis of pure staircase tensors, ordered by total degree.
    pub fn tensor_basis(&self) -> Vec<(Monomial, Monomial)> {
        let top = self.algebra.top_degree();
        let mut out = Vec::new();
        for total in 0..=2 * top {
            for a in 0..=total.min(top) {
                let b = total - a;
                if b > top {
                    continue;
                }
                for l in self.algebra.staircase_basis(a) {
                    for r in self.algebra.staircase_basis(b) {
                        out.push((l.clone(), r.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn coordinates<R: Scalar>(&self, t: &TensorClass<R>) -> Vec<R> {
        self.tensor_basis().into_iter().map(|k| t.coefficients.get(&k).cloned().unwrap_or_else(R::zero)).collect()
    }

    /// Rank over Q of a family of rational tensor classes.
    pub fn rank(&self, family: &[TensorClass<BigRational>]) -> usize {
        rank_rational(family.iter().map(|t| self.coordinates(t)).collect())
    }

    /// Dimension of the diagonal invariants, as the rank of `ρ` on the full basis.
    pub fn invariant_dimension(&self) -> Result<usize, CoinvError> {
        let images = self
            .tensor_basis()
            .iter()
            .map(|(a, b)| self.averaging(&self.pure::<BigRational>(a, b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.rank(&images))
    }

    /// True if every generator of the group fixes `t`.
    pub fn is_invariant<R: Scalar>(&self, t: &TensorClass<R>) -> bool {
        self.group.generators.iter().all(|&g| self.act(&self.group.elements[g], t) == *t)
    }
}

/// Coefficient of `t` at a pure tensor, zero if absent.
pub fn coefficient_at(t: &TensorClass<BigRational>, a: &[u32], b: &[u32]) -> BigRational {
    t.coefficients.get(&(a.to_vec(), b.to_vec())).cloned().unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn averaging_over_integers_fails() {
        let t = TensorAlgebra::new(3).unwrap();
        let f = t.pure::<BigInt>(&[1, 0, 0], &[0, 1, 0]);
        assert!(matches!(t.averaging(&f), Err(CoinvError::NonRationalScalars { .. })));
    }

    #[test]
    fn identity_descent_monomial_is_one() {
        let t = TensorAlgebra::new(3).unwrap();
        let f = t.descent_monomial::<BigRational>(&Permutation::identity(3));
        assert_eq!(f, t.one());
    }

    #[test]
    fn invariant_dimension_is_six() {
        assert_eq!(TensorAlgebra::new(3).unwrap().invariant_dimension().unwrap(), 6);
    }
}
