use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{format_monomial, format_terms, Monomial, Polynomial};
use super::{CoinvError, Scalar};
use crate::exactla::rref_rational;
use crate::grpcoh::Permutation;

/// All exponent vectors of `n` variables with total degree `d`, in descending lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `e_j ≤ n − j` for 1-based `j`.
pub fn is_staircase(m: &[u32]) -> bool {
    let n = m.len();
    m.iter().enumerate().all(|(j, &e)| e as usize <= n - 1 - j)
}

/// `H*(Fl_n(C); Z) = Z[x_1..x_n]/(σ_1..σ_n)` with the staircase basis and a reduction table.
#[derive(Clone, Debug)]
pub struct CoinvariantAlgebra {
    n: usize,
    top: u32,
    basis: Vec<Vec<Monomial>>,
    /// Normal form of every monomial of degree `≤ top` as integer staircase coordinates.
    reduction: HashMap<Monomial, Vec<(Monomial, BigInt)>>,
}

impl CoinvariantAlgebra {
    /// Builds the reduction table degree by degree from the span of `{monomial · σ_i}`.
    pub fn new(n: usize) -> Result<Self, CoinvError> {
        if !(1..=5).contains(&n) {
            return Err(CoinvError::UnsupportedRank(n));
        }
        let top = (n * (n - 1) / 2) as u32;
        let sigmas: Vec<Polynomial<BigInt>> = (0..=n).map(|k| Polynomial::elementary_symmetric(n, k)).collect();
        let mut basis = Vec::new();
        let mut reduction = HashMap::new();
        for d in 0..=top + 1 {
            let monos = monomials_of_degree(n, d);
            let (stair, other): (Vec<Monomial>, Vec<Monomial>) = monos.iter().cloned().partition(|m| is_staircase(m));
            let columns: Vec<&Monomial> = other.iter().chain(stair.iter()).collect();
            let col_of: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut rows = Vec::new();
            for (i, sigma) in sigmas.iter().enumerate().skip(1) {
                if i as u32 > d {
                    break;
                }
                for m in monomials_of_degree(n, d - i as u32) {
                    let gen = Polynomial::monomial(n, m, BigInt::one()).mul(sigma);
                    let mut row = vec![BigRational::zero(); columns.len()];
                    for (e, c) in gen.terms() {
                        row[col_of[e]] = BigRational::from_integer(c.clone());
                    }
                    rows.push(row);
                }
            }
            let (reduced, pivots) = rref_rational(rows);
            if d == top + 1 {
                if pivots.len() != columns.len() {
                    return Err(CoinvError::Internal(format!("ideal does not contain every monomial of degree {d}")));
                }
                break;
            }
            if pivots != (0..other.len()).collect::<Vec<_>>() {
                return Err(CoinvError::Internal(format!("staircase monomials are not a complement in degree {d}")));
            }
            for (m, row) in other.iter().zip(&reduced) {
                let mut image = Vec::new();
                for (k, s) in stair.iter().enumerate() {
                    let c = &row[other.len() + k];
                    if !c.is_zero() {
                        if !c.is_integer() {
                            return Err(CoinvError::Internal(format!("non-integral reduction of {m:?}")));
                        }
                        image.push((s.clone(), -c.to_integer()));
                    }
                }
                reduction.insert(m.clone(), image);
            }
            for s in &stair {
                reduction.insert(s.clone(), vec![(s.clone(), BigInt::one())]);
            }
            basis.push(stair);
        }
        Ok(CoinvariantAlgebra { n, top, basis, reduction })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top polynomial degree `n(n−1)/2`.
    pub fn top_degree(&self) -> u32 {
        self.top
    }

    /// Staircase monomials of polynomial degree `d`.
    pub fn staircase_basis(&self, d: u32) -> &[Monomial] {
        self.basis.get(d as usize).map_or(&[], Vec::as_slice)
    }

    /// Basis sizes per polynomial degree.
    pub fn dimensions(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn zero<R: Scalar>(&self) -> CoinvariantElement<R> {
        CoinvariantElement { n: self.n, coefficients: BTreeMap::new() }
    }

    pub fn one<R: Scalar>(&self) -> CoinvariantElement<R> {
        self.monomial(&vec![0; self.n])
    }

    /// Class of the monomial `x^e`.
    pub fn monomial<R: Scalar>(&self, e: &[u32]) -> CoinvariantElement<R> {
        self.normal_form(&Polynomial::monomial(self.n, e.to_vec(), R::one()))
    }

    pub fn generator<R: Scalar>(&self, i: usize) -> CoinvariantElement<R> {
        self.normal_form(&Polynomial::var(self.n, i))
    }

    pub fn normal_form<R: Scalar>(&self, p: &Polynomial<R>) -> CoinvariantElement<R> {
        assert_eq!(p.nvars(), self.n, "polynomial has the wrong number of variables");
        let mut out = self.zero();
        for (m, c) in p.terms() {
            if let Some(image) = self.reduction.get(m) {
                for (s, k) in image {
                    out.add_term(s, c.clone() * R::from_bigint(k));
                }
            }
        }
        out
    }

    pub fn multiply<R: Scalar>(&self, a: &CoinvariantElement<R>, b: &CoinvariantElement<R>) -> CoinvariantElement<R> {
        self.normal_form(&a.to_polynomial().mul(&b.to_polynomial()))
    }

    /// `ω · f` with `x_i ↦ x_{ω(i)}`.
    pub fn act<R: Scalar>(&self, omega: &Permutation, a: &CoinvariantElement<R>) -> CoinvariantElement<R> {
        self.normal_form(&a.to_polynomial().permute_variables(&omega.0))
    }

    /// Coordinates of the degree-`d` part in the staircase basis of that degree.
    pub fn coordinates<R: Scalar>(&self, a: &CoinvariantElement<R>, d: u32) -> Vec<R> {
        self.staircase_basis(d).iter().map(|m| a.coefficients.get(m).cloned().unwrap_or_else(R::zero)).collect()
    }
}

/// Element of the coinvariant algebra in the staircase basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinvariantElement<R> {
    n: usize,
    coefficients: BTreeMap<Monomial, R>,
}

impl<R: Scalar> CoinvariantElement<R> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &BTreeMap<Monomial, R> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn add_term(&mut self, m: &Monomial, c: R) {
        let v = self.coefficients.remove(m).unwrap_or_else(R::zero) + c;
        if !v.is_zero() {
            self.coefficients.insert(m.clone(), v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coefficients {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = CoinvariantElement { n: self.n, coefficients: BTreeMap::new() };
        for (m, c) in &self.coefficients {
            out.add_term(m, c.clone() * k.clone());
        }
        out
    }

    pub fn to_polynomial(&self) -> Polynomial<R> {
        let mut p = Polynomial::zero(self.n);
        for (m, c) in &self.coefficients {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Cohomological degrees (twice the polynomial degrees) present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.coefficients.keys().map(|m| 2 * m.iter().sum::<u32>()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Cohomological degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

impl<R: Scalar> fmt::Display for CoinvariantElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coefficients.iter().map(|(m, c)| (format_monomial(m, None), c));
        write!(f, "{}", format_terms(terms))
    }
}

/// Serializable view of an element: monomial strings and coefficient strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementReport {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub terms: Vec<(String, String)>,
    pub text: String,
}

impl<R: Scalar> From<&CoinvariantElement<R>> for ElementReport {
    fn from(a: &CoinvariantElement<R>) -> Self {
        ElementReport {
            n: a.n,
            degrees: a.degrees(),
            terms: a.coefficients.iter().map(|(m, c)| (format_monomial(m, None), c.to_string())).collect(),
            text: a.to_string(),
        }
    }
}
