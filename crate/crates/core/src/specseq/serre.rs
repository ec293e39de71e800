use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{BigradedPage, SpecseqError};
use crate::exactla::{mod_p_series, AbelianGroup, PoincareSeries};
use crate::grpcoh::{CohomologyTable, FreeResolution, GroupModule};

/// Default total-degree truncation for Serre pages.
pub const TRUNCATION: usize = 16;

/// One component `d_r : E_r^{c,q} → E_r^{c+r, q−r+1}` of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DifferentialArrow {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub rank: usize,
}

/// All nonzero components of `d_r` on one page.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DifferentialSpec {
    pub page: usize,
    pub arrows: Vec<DifferentialArrow>,
}

impl DifferentialSpec {
    pub fn new(page: usize, mut arrows: Vec<DifferentialArrow>) -> Result<Self, SpecseqError> {
        for a in &arrows {
            let (c, q) = a.source;
            if q + 1 < page || a.target != (c + page, q + 1 - page) {
                return Err(SpecseqError::BadBidegree { page, from: a.source, to: a.target });
            }
        }
        arrows.retain(|a| a.rank > 0);
        arrows.sort();
        Ok(DifferentialSpec { page, arrows })
    }

    pub fn is_zero(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// `E_2^{c,q} = H^c(G; H^q(F))_{(p)}` from the fiber modules of each row.
///
/// Each row's cohomology is computed from `res` up to its length and extended with the
/// integral `period` (verified by [`CohomologyTable`]). The page period is the smallest divisor
/// of `period` under which every p-primary row repeats.
pub fn serre_e2_over_bg(
    res: &FreeResolution,
    fiber_reps: &BTreeMap<usize, Vec<GroupModule>>,
    p: u64,
    period: Option<usize>,
    truncation: usize,
) -> Result<BigradedPage, SpecseqError> {
    if !crate::exactla::fp::is_prime(p) {
        return Err(SpecseqError::UnsupportedPrime(p));
    }
    let fiber_top = fiber_reps.keys().copied().max().unwrap_or(0);
    let max = res.length().saturating_sub(1).min(truncation + 1);
    let mut rows: BTreeMap<usize, Vec<AbelianGroup>> = BTreeMap::new();
    for (&q, modules) in fiber_reps {
        let last = (truncation + 1).saturating_sub(q);
        let mut row = vec![AbelianGroup::zero(); last + 1];
        for m in modules {
            let table = CohomologyTable::compute(res, m, max, period)?;
            for (c, slot) in row.iter_mut().enumerate() {
                let (g, _) = table
                    .get(c)
                    .ok_or(SpecseqError::Grpcoh(crate::grpcoh::GrpcohError::ResolutionTooShort { needed: c + 1, have: res.length() }))?;
                *slot = slot.direct_sum(&g.p_primary(p));
            }
        }
        rows.insert(q, row);
    }
    let page_period = period.map(|per| {
        (1..=per)
            .filter(|d| per % d == 0)
            .find(|&d| rows.values().all(|row| (1..row.len().saturating_sub(d)).all(|c| row[c] == row[c + d])))
            .unwrap_or(per)
    });
    let mut page = BigradedPage::new(p, 2, fiber_top, page_period, truncation);
    for (q, row) in rows {
        for (c, g) in row.into_iter().enumerate() {
            page.set(c, q, g)?;
        }
    }
    Ok(page)
}

/// Applies one page's differential and returns the next page.
///
/// Sources in column 0 use their free part (the kernel is a full-rank sublattice, so the
/// free rank is unchanged); all other sources and every target lose `rank` summands of order p.
/// Cells with total degree above the truncation are clamped at zero.
pub fn turn_page(page: &BigradedPage, spec: &DifferentialSpec) -> Result<BigradedPage, SpecseqError> {
    if spec.page != page.page_index {
        return Err(SpecseqError::PageMismatch { expected: page.page_index, got: spec.page });
    }
    let mut out_rank: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut in_rank: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in &spec.arrows {
        *out_rank.entry(a.source).or_default() += a.rank;
        *in_rank.entry(a.target).or_default() += a.rank;
    }
    let cells: BTreeSet<(usize, usize)> = out_rank.keys().chain(in_rank.keys()).copied().collect();
    let mut next = page.clone();
    next.page_index = page.page_index + 1;
    for (c, q) in cells {
        let out = out_rank.get(&(c, q)).copied().unwrap_or(0);
        let inc = in_rank.get(&(c, q)).copied().unwrap_or(0);
        let (f, t) = (page.free_rank(c, q), page.torsion_rank(c, q));
        let inside = c + q <= page.truncation;
        let too_large = |capacity: usize, rank: usize| SpecseqError::RankTooLarge { page: spec.page, cell: (c, q), rank, capacity };
        let new_t = if c == 0 {
            if out > f {
                return Err(too_large(f, out));
            }
            t.checked_sub(inc).ok_or_else(|| too_large(t, inc))?
        } else {
            match t.checked_sub(out + inc) {
                Some(v) => v,
                None if !inside => 0,
                None => return Err(too_large(t, out + inc)),
            }
        };
        next.set(c, q, AbelianGroup::elementary(f, page.prime, new_t))?;
    }
    Ok(next)
}

/// Turns pages from `page.page_index` until no differential can be nonzero.
pub fn run_to_e_infinity(page: &BigradedPage, specs: &[DifferentialSpec]) -> Result<BigradedPage, SpecseqError> {
    page.check_elementary()?;
    let mut by_page: BTreeMap<usize, &DifferentialSpec> = BTreeMap::new();
    for s in specs {
        if s.page < page.page_index || by_page.insert(s.page, s).is_some() {
            return Err(SpecseqError::PageMismatch { expected: page.page_index, got: s.page });
        }
    }
    let mut cur = page.clone();
    let last = page.fiber_top + 1;
    if let Some(&r) = by_page.keys().next_back() {
        if r > last {
            return Err(SpecseqError::PageMismatch { expected: last, got: r });
        }
    }
    while cur.page_index <= last {
        let spec = match by_page.get(&cur.page_index) {
            Some(s) => (*s).clone(),
            None => DifferentialSpec { page: cur.page_index, arrows: vec![] },
        };
        cur = turn_page(&cur, &spec)?;
    }
    Ok(cur)
}

/// Extra admissibility condition on candidate `E_∞` pages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Require the mod-p series in degrees `0..=D` to be palindromic with nonzero top.
    pub duality: bool,
}

/// A differential assignment and the stable page it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedSolution {
    pub specs: Vec<DifferentialSpec>,
    pub e_infinity: BigradedPage,
}

/// All differential assignments making `E_∞` vanish above `top_dimension`.
///
/// Unknowns are ranks per (page, column class, row), shared across periodic columns.
/// Free summands never receive differentials; they may support them only from column 0.
pub fn forced_differentials(
    page: &BigradedPage,
    top_dimension: usize,
    options: SolverOptions,
) -> Result<Vec<ForcedSolution>, SpecseqError> {
    page.check_elementary()?;
    let mut found = Vec::new();
    search(page, top_dimension, options, Vec::new(), &mut found);
    found.sort_by(|a, b| a.specs.cmp(&b.specs));
    Ok(found)
}

/// [`forced_differentials`] requiring exactly one solution.
pub fn unique_forced_differentials(
    page: &BigradedPage,
    top_dimension: usize,
    options: SolverOptions,
) -> Result<ForcedSolution, SpecseqError> {
    let mut all = forced_differentials(page, top_dimension, options)?;
    match all.len() {
        0 => Err(SpecseqError::NoSolution { top_dimension }),
        1 => Ok(all.remove(0)),
        n => Err(SpecseqError::Ambiguous { top_dimension, count: n, solutions: all.into_iter().map(|s| s.specs).collect() }),
    }
}

fn search(
    page: &BigradedPage,
    top: usize,
    options: SolverOptions,
    specs: Vec<DifferentialSpec>,
    found: &mut Vec<ForcedSolution>,
) {
    let r = page.page_index;
    if r > page.fiber_top + 1 {
        if page.vanishes_above(top) && (!options.duality || satisfies_duality(page, top)) {
            found.push(ForcedSolution { specs, e_infinity: page.clone() });
        }
        return;
    }
    let mut vars: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    // emptied cells stay in their class so that shared ranks respect them
    for q in (r - 1)..=page.fiber_top {
        for c in 0..=page.truncation.saturating_sub(q) {
            if page.torsion_rank(c + r, q + 1 - r) > 0 {
                vars.entry((page.column_class(c), q)).or_default().push((c, q));
            }
        }
    }
    let keys: Vec<_> = vars.keys().copied().collect();
    let ranges: Vec<usize> = keys
        .iter()
        .map(|k| {
            vars[k]
                .iter()
                .map(|&(c, q)| {
                    let cap = if c == 0 { page.free_rank(c, q) } else { page.torsion_rank(c, q) };
                    cap.min(page.torsion_rank(c + r, q + 1 - r))
                })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut combo = vec![0usize; keys.len()];
    loop {
        let arrows = keys
            .iter()
            .zip(&combo)
            .flat_map(|(k, &rank)| {
                vars[k].iter().map(move |&(c, q)| DifferentialArrow { source: (c, q), target: (c + r, q + 1 - r), rank })
            })
            .collect();
        if let Ok(spec) = DifferentialSpec::new(r, arrows) {
            if let Ok(next) = turn_page(page, &spec) {
                let mut s = specs.clone();
                if !spec.is_zero() {
                    s.push(spec);
                }
                search(&next, top, options, s, found);
            }
        }
        // odometer over the rank ranges
        let mut i = 0;
        loop {
            if i == combo.len() {
                return;
            }
            if combo[i] < ranges[i] {
                combo[i] += 1;
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

fn satisfies_duality(page: &BigradedPage, top: usize) -> bool {
    let graded: Vec<AbelianGroup> = (0..=top + 1).map(|n| total_degree(page, n)).collect();
    let s = mod_p_series(&graded, page.prime).truncate(top);
    s.coefficients().len() == top + 1 && s.is_palindromic()
}

fn total_degree(page: &BigradedPage, n: usize) -> AbelianGroup {
    let (free, tors) = page
        .anti_diagonal(n)
        .iter()
        .fold((0, 0), |(f, t), (_, g)| (f + g.free_rank, t + g.p_rank(page.prime)));
    AbelianGroup::elementary(free, page.prime, tors)
}

/// `H^n = ⊕_{c+q=n} E_∞^{c,q}` for `n ≤ max_degree`, split because `p² ∤ |G|`.
pub fn assemble_total(page: &BigradedPage, group_order: usize, max_degree: usize) -> Result<Vec<AbelianGroup>, SpecseqError> {
    let p = page.prime as usize;
    if group_order % (p * p) == 0 {
        return Err(SpecseqError::ExtensionAmbiguous { prime: page.prime, group_order });
    }
    page.check_elementary()?;
    if max_degree > page.truncation {
        return Err(SpecseqError::OutsidePage { column: max_degree, row: 0 });
    }
    Ok((0..=max_degree).map(|n| total_degree(page, n)).collect())
}

/// Mod-p Poincaré series of a p-local graded group by universal coefficients.
pub fn series_of(graded: &[AbelianGroup], p: u64, top: usize) -> PoincareSeries {
    mod_p_series(graded, p).truncate(top)
}
