use serde::{Deserialize, Serialize};

use super::{HolimError, PosetDiagram};
use crate::exactla::{FpMatrix, PoincareSeries};

/// Normalized cosimplicial replacement truncated to `C⁰ → C¹ → C²`.
///
/// `C⁰ = ⊕_i H(i)`, `C¹ = ⊕_{(j,l)} H(l)`, `C² = ⊕_{(a,b,c)} H(c)`, each in poset order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosimplicialComplex {
    pub degree: usize,
    pub dims: [usize; 3],
    /// `d⁰ − d¹ : C⁰ → C¹`.
    pub d0: FpMatrix,
    /// `d⁰ − d¹ + d² : C¹ → C²`.
    pub d1: FpMatrix,
}

/// `(dim lim⁰, dim lim¹, dim lim²)` in one degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Limits {
    pub lim0: usize,
    pub lim1: usize,
    pub lim2: usize,
}

impl CosimplicialComplex {
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.dims[0], self.dims[1], self.dims[2])
    }

    pub fn squares_to_zero(&self) -> bool {
        self.d1.mul(&self.d0).is_zero()
    }

    pub fn limits(&self) -> Limits {
        let r0 = self.d0.rank();
        let r1 = self.d1.rank();
        Limits { lim0: self.dims[0] - r0, lim1: self.dims[1] - r0 - r1, lim2: self.dims[2] - r1 }
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut out = Vec::new();
    let mut total = 0;
    for s in sizes {
        out.push(total);
        total += s;
    }
    (out, total)
}

fn put_block(target: &mut FpMatrix, row: usize, col: usize, block: &FpMatrix, sign: i64) {
    for i in 0..block.rows {
        for j in 0..block.cols {
            target.add_at(row + i, col + j, sign * block.get(i, j) as i64);
        }
    }
}

pub fn cosimplicial_complex(diagram: &PosetDiagram, k: usize) -> Result<CosimplicialComplex, HolimError> {
    diagram.check_functoriality(k)?;
    let ps = &diagram.poset;
    let p = diagram.prime;
    let dim = |i: usize| diagram.dim(i, k);
    let (o0, n0) = offsets((0..ps.len()).map(dim));
    let (o1, n1) = offsets(ps.arrows.iter().map(|&(_, l)| dim(l)));
    let (_, n2) = offsets(ps.chains3.iter().map(|&(_, _, c)| dim(c)));

    let mut d0 = FpMatrix::zeros(p, n1, n0);
    for (r, &(j, l)) in ps.arrows.iter().enumerate() {
        put_block(&mut d0, o1[r], o0[l], &FpMatrix::identity(p, dim(l)), 1);
        put_block(&mut d0, o1[r], o0[j], &diagram.map(j, l, k), -1);
    }

    let mut d1 = FpMatrix::zeros(p, n2, n1);
    let mut row = 0;
    for &(a, b, c) in &ps.chains3 {
        let bc = ps.arrow_index(b, c).expect("chain faces are arrows");
        let ac = ps.arrow_index(a, c).expect("chain faces are arrows");
        let ab = ps.arrow_index(a, b).expect("chain faces are arrows");
        let id = FpMatrix::identity(p, dim(c));
        put_block(&mut d1, row, o1[bc], &id, 1);
        put_block(&mut d1, row, o1[ac], &id, -1);
        put_block(&mut d1, row, o1[ab], &diagram.map(b, c, k), 1);
        row += dim(c);
    }
    Ok(CosimplicialComplex { degree: k, dims: [n0, n1, n2], d0, d1 })
}

pub fn higher_limits(diagram: &PosetDiagram, k: usize) -> Result<Limits, HolimError> {
    Ok(cosimplicial_complex(diagram, k)?.limits())
}

/// True iff `d⁰ − d¹ + d²` is surjective, i.e. `lim² = 0`.
pub fn lim2_vanishing_check(diagram: &PosetDiagram, k: usize) -> Result<bool, HolimError> {
    let c = cosimplicial_complex(diagram, k)?;
    Ok(c.d1.rank() == c.dims[2])
}

/// Collapsed Bousfield–Kan spectral sequence: `H^n = lim⁰ H^n ⊕ lim¹ H^{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkAssembly {
    pub prime: u64,
    /// Higher limits for `k = 0..=max_degree`.
    pub limits: Vec<Limits>,
    /// `dim H^n(hocolim; F_p)` for `n = 0..=max_degree + 1`.
    pub dims: Vec<usize>,
    pub series: PoincareSeries,
}

impl BkAssembly {
    pub fn lim0_list(&self) -> Vec<(usize, usize)> {
        self.limits.iter().enumerate().filter(|(_, l)| l.lim0 > 0).map(|(k, l)| (k, l.lim0)).collect()
    }

    pub fn lim1_list(&self) -> Vec<(usize, usize)> {
        self.limits.iter().enumerate().filter(|(_, l)| l.lim1 > 0).map(|(k, l)| (k, l.lim1)).collect()
    }
}

pub fn bk_assemble(diagram: &PosetDiagram) -> Result<BkAssembly, HolimError> {
    let limits: Vec<Limits> = (0..=diagram.max_degree).map(|k| higher_limits(diagram, k)).collect::<Result<_, _>>()?;
    if let Some((k, l)) = limits.iter().enumerate().find(|(_, l)| l.lim2 != 0) {
        return Err(HolimError::NonVanishingLim2 { degree: k, dim: l.lim2 });
    }
    let dims: Vec<usize> = (0..=diagram.max_degree + 1)
        .map(|n| limits.get(n).map_or(0, |l| l.lim0) + n.checked_sub(1).and_then(|m| limits.get(m)).map_or(0, |l| l.lim1))
        .collect();
    let series = PoincareSeries::new(dims.iter().map(|&d| d as u64).collect());
    Ok(BkAssembly { prime: diagram.prime, limits, dims, series })
}
