use std::fmt;

use serde::{Deserialize, Serialize};

use super::AbelianGroup;

/// Polynomial with nonnegative coefficients indexed by degree; trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoincareSeries {
    coefficients: Vec<u64>,
}

impl PoincareSeries {
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        PoincareSeries { coefficients }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// Builds a series from `(degree, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, u64)]) -> Self {
        let top = terms.iter().map(|t| t.0).max().map_or(0, |d| d + 1);
        let mut c = vec![0; top];
        for &(d, k) in terms {
            c[d] += k;
        }
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn coefficient(&self, d: usize) -> u64 {
        self.coefficients.get(d).copied().unwrap_or(0)
    }

    /// Degree of the top nonzero term; `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn mul(&self, rhs: &PoincareSeries) -> PoincareSeries {
        if self.coefficients.is_empty() || rhs.coefficients.is_empty() {
            return Self::default();
        }
        let mut c = vec![0; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn add(&self, rhs: &PoincareSeries) -> PoincareSeries {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        Self::new((0..n).map(|d| self.coefficient(d) + rhs.coefficient(d)).collect())
    }

    /// Drops every term above degree `d`.
    pub fn truncate(&self, d: usize) -> PoincareSeries {
        Self::new(self.coefficients.iter().take(d + 1).copied().collect())
    }

    /// Substitutes `t ↦ t^k`.
    pub fn stretch(&self, k: usize) -> PoincareSeries {
        let mut c = vec![0; self.coefficients.len().saturating_sub(1) * k + 1];
        for (d, &x) in self.coefficients.iter().enumerate() {
            c[d * k] = x;
        }
        Self::new(c)
    }

    /// Symmetric about its top degree.
    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| {
                let coef = if c == 1 && d > 0 { String::new() } else { c.to_string() };
                match d {
                    0 => coef,
                    1 => format!("{coef}t"),
                    _ => format!("{coef}t^{d}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Universal-coefficient conversion of p-local integral cohomology into mod-p Betti numbers.
///
/// `graded[d]` is `H^d`; coefficient `d` is `free(H^d) + #p-summands(H^d) + #p-summands(H^{d+1})`.
pub fn mod_p_series(graded: &[AbelianGroup], p: u64) -> PoincareSeries {
    let c = (0..graded.len())
        .map(|d| {
            let next = graded.get(d + 1).map_or(0, |g| g.p_rank(p));
            (graded[d].free_rank + graded[d].p_rank(p) + next) as u64
        })
        .collect();
    PoincareSeries::new(c)
}
