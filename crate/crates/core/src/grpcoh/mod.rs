//! Finite groups, integral modules, free resolutions and group cohomology.

mod cache;
mod cohomology;
mod group;
mod module;
mod resolution;

use thiserror::Error;

pub use cache::{cache_key, sha256_hex, CacheInfo, ResolutionCache};
pub use cohomology::{
    cohomology_range, group_cohomology, hom_differential, periodicity_verify, CohomologySource, CohomologyTable,
};
pub use group::{cyclic_group, symmetric_group, FiniteGroup, Permutation};
pub use module::{catalog_module, standard_modules, GroupModule, CATALOG_NAMES};
pub use resolution::{FreeResolution, SelectionOrder, ALGORITHM_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrpcohError {
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("module {module} is not a homomorphism (elements {a}, {b})")]
    NotAHomomorphism { module: String, a: usize, b: usize },
    #[error("module and resolution belong to different groups")]
    GroupMismatch,
    #[error("resolution failure: {0}")]
    ResolutionFailure(String),
    #[error("resolution of length {have} is too short; need {needed}")]
    ResolutionTooShort { needed: usize, have: usize },
    #[error("period {period} does not hold for {module} on the computed range")]
    PeriodicityFailure { module: String, period: usize },
    #[error("cache error: {0}")]
    Cache(String),
}

/// Looks up a group by name: `S1`…`S6` (also `Σn`, `Sigma n`) and `C1`…`C12`.
pub fn group_by_name(name: &str) -> Result<FiniteGroup, GrpcohError> {
    let t = name.trim();
    let t = t.strip_prefix("Sigma").or_else(|| t.strip_prefix('Σ')).map(|r| format!("S{}", r.trim())).unwrap_or(t.to_string());
    let unknown = || GrpcohError::UnknownName(name.to_string());
    let (kind, num) = t.split_at(1);
    let n: usize = num.parse().map_err(|_| unknown())?;
    match kind {
        "S" | "s" if (1..=6).contains(&n) => Ok(symmetric_group(n)),
        "C" | "c" if (1..=12).contains(&n) => Ok(cyclic_group(n)),
        _ => Err(unknown()),
    }
}
