use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// `A = U·D·V` with `U`, `V` unimodular and `D` diagonal in divisibility order.
///
/// `u_inv` and `v_inv` are the inverses of `U` and `V`, so `u_inv·A·v_inv = D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    #[serde(with = "super::matrix::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Columns of `v_inv` past the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v_inv.cols()).map(|j| self.v_inv.column(j)).collect()
    }
}

#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
}

pub(crate) struct SnfWork {
    pub diag: Vec<BigInt>,
    /// `U` stored transposed so that its column operations become row operations.
    pub ut: Option<Vec<Vec<BigInt>>>,
    pub p: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
    /// `V⁻¹` stored transposed.
    pub qt: Option<Vec<Vec<BigInt>>>,
    pub rows: usize,
    pub cols: usize,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

/// `dst -= k * src` for two rows of the same table.
fn axpy_rows(m: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    debug_assert_ne!(dst, src);
    let (d, s) = if dst < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = m.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= k * y;
        }
    }
}

fn neg_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

struct State {
    a: Vec<Vec<BigInt>>,
    ut: Option<Vec<Vec<BigInt>>>,
    p: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    qt: Option<Vec<Vec<BigInt>>>,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(ut) = &mut self.ut {
            ut.swap(i, j);
        }
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            v.swap(i, j);
        }
        if let Some(qt) = &mut self.qt {
            qt.swap(i, j);
        }
    }

    /// row_i -= k * row_j
    fn row_sub(&mut self, i: usize, j: usize, k: &BigInt) {
        axpy_rows(&mut self.a, i, j, k);
        if let Some(ut) = &mut self.ut {
            // U ← U·E⁻¹ with E⁻¹ adding k·row_j back: column j of U += k·column i.
            axpy_rows(ut, j, i, &-k);
        }
        if let Some(p) = &mut self.p {
            axpy_rows(p, i, j, k);
        }
    }

    /// col_i -= k * col_j
    fn col_sub(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in self.a.iter_mut() {
            if !r[j].is_zero() {
                let t = k * &r[j];
                r[i] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            axpy_rows(v, j, i, &-k);
        }
        if let Some(qt) = &mut self.qt {
            axpy_rows(qt, i, j, k);
        }
    }

    fn neg_row(&mut self, i: usize) {
        neg_row(&mut self.a, i);
        if let Some(ut) = &mut self.ut {
            neg_row(ut, i);
        }
        if let Some(p) = &mut self.p {
            neg_row(p, i);
        }
    }
}

/// Smallest absolute nonzero entry in the lower-right block starting at `t`,
/// ties broken by row then column.
fn find_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |b| ax < b.2) {
                let one = ax == BigInt::from(1);
                best = Some((i, j, ax));
                if one {
                    // nothing smaller exists and earlier positions were already scanned
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

pub(crate) fn snf_core(m: &IntMatrix, track: Track) -> SnfWork {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = State {
        a: m.to_nested(),
        ut: track.u.then(|| ident(rows)),
        p: track.u_inv.then(|| ident(rows)),
        v: track.v.then(|| ident(cols)),
        qt: track.v_inv.then(|| ident(cols)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&st.a, t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let piv = st.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if st.a[i][t].is_zero() {
                    continue;
                }
                let q = st.a[i][t].div_floor(&piv);
                if !q.is_zero() {
                    st.row_sub(i, t, &q);
                }
                if !st.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if st.a[t][j].is_zero() {
                    continue;
                }
                let q = st.a[t][j].div_floor(&piv);
                if !q.is_zero() {
                    st.col_sub(j, t, &q);
                }
                if !st.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = find_pivot(&st.a, t).expect("pivot block cannot be zero here");
                st.swap_rows(t, pi);
                st.swap_cols(t, pj);
                continue;
            }
            // Row and column of the pivot are clear. Enforce divisibility of the rest.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&st.a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    st.row_sub(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.neg_row(t);
        }
        diag.push(st.a[t][t].clone());
        t += 1;
    }
    SnfWork { diag, ut: st.ut, p: st.p, v: st.v, qt: st.qt, rows, cols }
}

fn to_matrix(n: usize, m: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_vec(n, m, rows.into_iter().flatten().collect())
}

/// Smith normal form with the smallest-absolute-pivot rule and `(row, col)` tie-break.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let w = snf_core(a, Track::ALL);
    let (r, c) = (w.rows, w.cols);
    let mut d = IntMatrix::zeros(r, c);
    for (i, x) in w.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    SnfDecomposition {
        u: to_matrix(r, r, w.ut.unwrap()).transpose(),
        u_inv: to_matrix(r, r, w.p.unwrap()),
        v: to_matrix(c, c, w.v.unwrap()),
        v_inv: to_matrix(c, c, w.qt.unwrap()).transpose(),
        d,
        invariant_factors: w.diag,
    }
}

/// Invariant factors only, skipping the transform bookkeeping.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    snf_core(a, Track::NONE).diag
}

/// Integer rank.
pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Rank of `a` reduced mod `p`, read off the invariant factors.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let p = BigInt::from(p);
    invariant_factors(a).iter().filter(|e| !(*e % &p).is_zero()).count()
}

/// A basis of `{x : a·x = 0}` over Z, in SNF output order.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let w = snf_core(a, Track { v_inv: true, ..Track::NONE });
    let rk = w.diag.len();
    w.qt.unwrap().into_iter().skip(rk).collect()
}

/// Hermite-reduced basis of `{x : a·x = 0}`, found by integer column echelon.
///
/// Entries stay small on the sparse matrices met in resolutions, unlike SNF transforms.
pub fn kernel_basis_reduced(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
        .map(|j| {
            let mut t = vec![BigInt::zero(); n];
            t[j] = BigInt::from(1);
            (a.column(j), t)
        })
        .collect();
    let mut k = 0;
    for i in 0..m {
        loop {
            let best = (k..n)
                .filter(|&j| !cols[j].0[i].is_zero())
                .min_by(|&x, &y| cols[x].0[i].abs().cmp(&cols[y].0[i].abs()).then(x.cmp(&y)));
            let Some(j) = best else { break };
            cols.swap(k, j);
            let (head, tail) = cols.split_at_mut(k + 1);
            let piv = &head[k];
            let mut clean = true;
            for c in tail.iter_mut() {
                if c.0[i].is_zero() {
                    continue;
                }
                let q = c.0[i].div_floor(&piv.0[i]);
                for (x, y) in c.0.iter_mut().zip(&piv.0) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                for (x, y) in c.1.iter_mut().zip(&piv.1) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !c.0[i].is_zero() {
                    clean = false;
                }
            }
            if clean {
                k += 1;
                break;
            }
        }
    }
    let mut lat = super::Lattice::new(n);
    for (_, t) in cols.into_iter().skip(k) {
        lat.insert(&t);
    }
    lat.into_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), *a);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for w in s.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::from_diagonal(&[2, 3]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_augmentation() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1); 3]);
        let s = check(&IntMatrix::from_rows(&[[1, 1, 1]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1)]);
        assert_eq!(s.kernel_basis().len(), 2);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert!(s.invariant_factors.is_empty());
        }
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 4)).len(), 4);
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[[4, 6, 2], [6, 9, 3], [2, 2, 8]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
        check(&a);
    }

    #[test]
    fn reduced_kernel_spans_the_kernel() {
        let a = IntMatrix::from_rows(&[[2, 4, 6, 1], [1, 1, 1, 1]]);
        let k1 = kernel_basis(&a);
        let k2 = kernel_basis_reduced(&a);
        assert_eq!(k1.len(), k2.len());
        let mut l = crate::exactla::Lattice::new(4);
        for v in &k2 {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            l.insert(v);
        }
        assert!(k1.iter().all(|v| l.contains(v)));
    }

    #[test]
    fn rank_mod_p_reads_factors() {
        let a = IntMatrix::from_diagonal(&[1, 2, 6]);
        assert_eq!(rank_mod_p(&a, 2), 1);
        assert_eq!(rank_mod_p(&a, 3), 2);
        assert_eq!(rank_mod_p(&a, 5), 3);
    }
}
