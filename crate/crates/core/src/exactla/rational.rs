use num_rational::BigRational;
use num_traits::Zero;

/// Reduced row echelon form over Q; returns the reduced nonzero rows and their pivot columns.
pub fn rref_rational(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_rational(rows: Vec<Vec<BigRational>>) -> usize {
    rref_rational(rows).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_rational(vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])]), 2);
    }

    #[test]
    fn reduced_rows() {
        let (rows, piv) = rref_rational(vec![q(&[2, 4]), q(&[1, 3])]);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows, vec![q(&[1, 0]), q(&[0, 1])]);
    }
}
