use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::serre::{assemble_total, serre_e2_over_bg, series_of, unique_forced_differentials, ForcedSolution, SolverOptions, TRUNCATION};
use super::{BigradedPage, SpecseqError};
use crate::exactla::{AbelianGroup, PoincareSeries};
use crate::grpcoh::{catalog_module, group_by_name, FiniteGroup, FreeResolution, GroupModule};

pub const FLBAR3_CONFIG: &str = include_str!("../../data/flbar3.cfg");
pub const FL3XFL3_CONFIG: &str = include_str!("../../data/fl3xfl3.cfg");

/// A fibration `F → E → BG` with the fiber cohomology given row by row as sums of catalog modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationConfig {
    pub name: String,
    pub group: String,
    /// Fiber degree → catalog module names whose direct sum is `H^q(F; Z)`.
    pub rows: BTreeMap<usize, Vec<String>>,
    /// Dimension of the total space as a closed manifold.
    pub top_dimension: usize,
    /// Integral period of the group cohomology of every row module.
    pub period: usize,
    pub default_prime: u64,
    /// Duality filter per prime; when absent, on for p = 2 and for an orientable top row.
    #[serde(default)]
    pub duality: Option<BTreeMap<u64, bool>>,
}

impl FibrationConfig {
    pub fn parse(text: &str) -> Result<Self, SpecseqError> {
        let cfg: FibrationConfig = serde_json::from_str(text).map_err(|e| SpecseqError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn bundled(name: &str) -> Result<Self, SpecseqError> {
        match name.trim_end_matches(".cfg") {
            "flbar3" => Self::parse(FLBAR3_CONFIG),
            "fl3xfl3" => Self::parse(FL3XFL3_CONFIG),
            other => Err(SpecseqError::Config(format!("no bundled fibration named {other}"))),
        }
    }

    pub fn validate(&self) -> Result<(), SpecseqError> {
        let g = Arc::new(group_by_name(&self.group)?);
        if self.rows.is_empty() || self.period == 0 {
            return Err(SpecseqError::Config("rows must be nonempty and the period positive".into()));
        }
        for names in self.rows.values() {
            for n in names {
                catalog_module(&g, n)?;
            }
        }
        Ok(())
    }

    pub fn group(&self) -> Result<Arc<FiniteGroup>, SpecseqError> {
        Ok(Arc::new(group_by_name(&self.group)?))
    }

    pub fn fiber_reps(&self, group: &Arc<FiniteGroup>) -> Result<BTreeMap<usize, Vec<GroupModule>>, SpecseqError> {
        self.rows
            .iter()
            .map(|(&q, names)| Ok((q, names.iter().map(|n| catalog_module(group, n)).collect::<Result<Vec<_>, _>>()?)))
            .collect()
    }

    pub fn duality_for(&self, p: u64) -> bool {
        if let Some(v) = self.duality.as_ref().and_then(|m| m.get(&p)) {
            return *v;
        }
        let top_row = self.rows.iter().next_back().map(|(_, v)| v.as_slice()).unwrap_or(&[]);
        p == 2 || matches!(top_row, [one] if one == "trivial")
    }

    /// Resolution length needed to verify the period and fill the page.
    pub fn resolution_length(&self) -> usize {
        2 * self.period + 2
    }
}

/// Everything computed for one fibration at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreResult {
    pub fibration: String,
    pub prime: u64,
    pub top_dimension: usize,
    pub duality_filter: bool,
    pub e2: BigradedPage,
    pub solution: ForcedSolution,
    /// `H^n` of the total space, p-locally, for `0 ≤ n ≤ top_dimension`.
    pub totals: Vec<AbelianGroup>,
    pub series: PoincareSeries,
    pub palindromic: bool,
}

/// E2 page, unique forced differentials, E∞ and assembled groups.
pub fn run_fibration(cfg: &FibrationConfig, p: u64, res: &FreeResolution) -> Result<SerreResult, SpecseqError> {
    let group = res.group.clone();
    if group.content_hash() != cfg.group()?.content_hash() {
        return Err(SpecseqError::Config(format!("resolution is not over {}", cfg.group)));
    }
    let reps = cfg.fiber_reps(&group)?;
    let e2 = serre_e2_over_bg(res, &reps, p, Some(cfg.period), TRUNCATION)?;
    let duality = cfg.duality_for(p);
    let solution = unique_forced_differentials(&e2, cfg.top_dimension, SolverOptions { duality })?;
    let totals = assemble_total(&solution.e_infinity, group.order(), cfg.top_dimension)?;
    let series = series_of(&totals, p, cfg.top_dimension);
    let palindromic = series.is_palindromic();
    Ok(SerreResult {
        fibration: cfg.name.clone(),
        prime: p,
        top_dimension: cfg.top_dimension,
        duality_filter: duality,
        e2,
        solution,
        totals,
        series,
        palindromic,
    })
}
