use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer span of a set of vectors, kept as an echelon basis for membership tests.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    /// pivot column → basis row whose leading entry sits there (positive)
    rows: BTreeMap<usize, Vec<BigInt>>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.values()
    }

    /// Adds `v` to the span. Returns true if the span grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut grew = false;
        while let Some(c) = leading(&v) {
            let Some(row) = self.rows.get_mut(&c) else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.rows.insert(c, v);
                return true;
            };
            let a = row[c].clone();
            let b = v[c].clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &q * y;
                }
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &s * r + &t * x).collect();
            let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ag * x - &bg * r).collect();
            *row = new_row;
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            v = new_v;
            grew = true;
        }
        grew
    }

    /// Product of the pivots; the index of the span inside its saturation times a content factor.
    pub fn pivot_product(&self) -> BigInt {
        self.rows.iter().map(|(&c, r)| r[c].clone()).product()
    }

    /// Reduces every entry above a pivot into `0..pivot` (Hermite normal form).
    pub fn reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (pos, &c) in pivots.iter().enumerate() {
            let row = self.rows[&c].clone();
            for &s in &pivots[..pos] {
                let other = self.rows.get_mut(&s).unwrap();
                let q = other[c].div_floor(&row[c]);
                if !q.is_zero() {
                    for (x, y) in other.iter_mut().zip(&row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    /// Reduced echelon basis, ordered by pivot column.
    pub fn into_basis(mut self) -> Vec<Vec<BigInt>> {
        self.reduce();
        self.rows.into_values().collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        while let Some(c) = leading(&v) {
            let Some(row) = self.rows.get(&c) else { return false };
            if !(&v[c] % &row[c]).is_zero() {
                return false;
            }
            let q = &v[c] / &row[c];
            for (x, y) in v.iter_mut().zip(row.iter()) {
                *x -= &q * y;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn gcd_combination() {
        let mut l = Lattice::new(2);
        l.insert(&v(&[4, 1]));
        l.insert(&v(&[6, 0]));
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[2, -1])));
        assert!(!l.contains(&v(&[2, 3])));
        assert!(l.contains(&v(&[0, 6])));
        assert!(!l.contains(&v(&[0, 1])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn reduced_form_is_canonical() {
        let mut a = Lattice::new(2);
        a.insert(&v(&[1, 5]));
        a.insert(&v(&[0, 3]));
        let mut b = Lattice::new(2);
        b.insert(&v(&[1, 2]));
        b.insert(&v(&[0, -3]));
        assert_eq!(a.into_basis(), b.into_basis());
    }

    #[test]
    fn redundant_insert_does_not_grow() {
        let mut l = Lattice::new(3);
        assert!(l.insert(&v(&[1, 2, 3])));
        assert!(!l.insert(&v(&[2, 4, 6])));
        assert!(l.contains(&v(&[-1, -2, -3])));
    }
}
