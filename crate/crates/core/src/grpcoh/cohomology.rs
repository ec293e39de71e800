use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{FreeResolution, GroupModule, GrpcohError};
use crate::exactla::{cohomology_at, AbelianGroup, IntMatrix};

/// Cochain differential `δ^k : M^{r_k} → M^{r_{k+1}}` of `Hom_ZG(F_•, M)`.
pub fn hom_differential(res: &FreeResolution, module: &GroupModule, k: usize) -> IntMatrix {
    let g = &res.group;
    let n = g.order();
    let m = module.rank();
    let (rk, rk1) = (res.ranks[k], res.ranks[k + 1]);
    let d = res.boundary(k + 1);
    let mut out = IntMatrix::zeros(m * rk1, m * rk);
    for i in 0..rk1 {
        let col = i * n + g.identity;
        for j in 0..rk {
            let mut block = IntMatrix::zeros(m, m);
            for h in 0..n {
                let c = d.get(j * n + h, col);
                if !c.is_zero() {
                    block = block.add(&module.action(h).scale(c));
                }
            }
            out.set_block(i * m, j * m, &block);
        }
    }
    out
}

/// `H^d(G; M)` from the Hom-complex of a resolution of length at least `d + 1`.
pub fn group_cohomology(res: &FreeResolution, module: &GroupModule, d: usize) -> Result<AbelianGroup, GrpcohError> {
    if **module.group() != *res.group {
        return Err(GrpcohError::GroupMismatch);
    }
    if res.length() < d + 1 {
        return Err(GrpcohError::ResolutionTooShort { needed: d + 1, have: res.length() });
    }
    let m = module.rank();
    let d_in = if d == 0 { IntMatrix::zeros(m * res.ranks[0], 0) } else { hom_differential(res, module, d - 1) };
    let d_out = hom_differential(res, module, d);
    cohomology_at(&d_in, &d_out).map_err(|e| GrpcohError::ResolutionFailure(e.to_string()))
}

/// `H^0, …, H^max` in one pass.
pub fn cohomology_range(res: &FreeResolution, module: &GroupModule, max: usize) -> Result<Vec<AbelianGroup>, GrpcohError> {
    (0..=max).map(|d| group_cohomology(res, module, d)).collect()
}

/// True iff `H^d ≅ H^{d+period}` for all `1 ≤ d ≤ range − period`.
pub fn periodicity_verify(res: &FreeResolution, module: &GroupModule, period: usize, range: usize) -> Result<bool, GrpcohError> {
    let table = cohomology_range(res, module, range)?;
    Ok(holds_period(&table, period))
}

pub(crate) fn holds_period(table: &[AbelianGroup], period: usize) -> bool {
    period >= 1 && (1..table.len().saturating_sub(period)).all(|d| table[d] == table[d + period])
}

/// Whether a value was computed from the resolution or read off the verified period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohomologySource {
    Computed,
    PeriodicExtension,
}

/// Cohomology computed up to a degree, extended beyond it by a verified period.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub module: String,
    pub computed: Vec<AbelianGroup>,
    pub period: Option<usize>,
}

impl CohomologyTable {
    pub fn compute(res: &FreeResolution, module: &GroupModule, max: usize, period: Option<usize>) -> Result<Self, GrpcohError> {
        let computed = cohomology_range(res, module, max)?;
        if let Some(p) = period {
            if computed.len() < p + 2 || !holds_period(&computed, p) {
                return Err(GrpcohError::PeriodicityFailure { module: module.name.clone(), period: p });
            }
        }
        Ok(CohomologyTable { module: module.name.clone(), computed, period })
    }

    pub fn max_computed(&self) -> usize {
        self.computed.len() - 1
    }

    pub fn get(&self, d: usize) -> Option<(AbelianGroup, CohomologySource)> {
        if let Some(g) = self.computed.get(d) {
            return Some((g.clone(), CohomologySource::Computed));
        }
        let p = self.period?;
        let top = self.max_computed();
        // shift down into the computed window, staying in positive degrees
        let mut e = d;
        while e > top {
            e -= p;
        }
        if e == 0 {
            e += p;
        }
        Some((self.computed[e].clone(), CohomologySource::PeriodicExtension))
    }
}
