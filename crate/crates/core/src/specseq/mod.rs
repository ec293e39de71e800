//! Spectral sequences: Serre spectral sequences over `BΣ3` with a forced-differential solver,
//! and the Koszul model for `U(3) → U(3)/T(2) → (CP^∞)²`.

mod config;
mod koszul;
mod page;
mod serre;

use thiserror::Error;

pub use config::{run_fibration, FibrationConfig, SerreResult, FL3XFL3_CONFIG, FLBAR3_CONFIG};
pub use koszul::{
    koszul_cohomology, reduce_modulo, u3t2_cohomology, u3t2_weights, whitney_chern, BetaPolynomial, ChernVector,
    FpPolynomial, KoszulModel, RingGenerator, Transgression, U3T2Cohomology, KOSZUL_TRUNCATION,
};
pub use page::{BigradedPage, PageEntry};
pub use serre::{
    assemble_total, forced_differentials, run_to_e_infinity, serre_e2_over_bg, series_of, turn_page,
    unique_forced_differentials, DifferentialArrow, DifferentialSpec, ForcedSolution, SolverOptions, TRUNCATION,
};

use crate::grpcoh::GrpcohError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecseqError {
    #[error(transparent)]
    Grpcoh(#[from] GrpcohError),
    #[error("{0} is not a supported prime")]
    UnsupportedPrime(u64),
    #[error("cell ({column}, {row}) lies outside the page")]
    OutsidePage { column: usize, row: usize },
    #[error("entry at ({column}, {row}) is {group}, not elementary p-torsion plus free")]
    NotElementary { column: usize, row: usize, group: String },
    #[error("d{page} from {from:?} cannot land in {to:?}")]
    BadBidegree { page: usize, from: (usize, usize), to: (usize, usize) },
    #[error("expected a differential on page {expected}, got page {got}")]
    PageMismatch { expected: usize, got: usize },
    #[error("d{page} of rank {rank} at {cell:?} exceeds capacity {capacity}")]
    RankTooLarge { page: usize, cell: (usize, usize), rank: usize, capacity: usize },
    #[error("no differential pattern makes E_inf vanish above degree {top_dimension}")]
    NoSolution { top_dimension: usize },
    #[error("{count} differential patterns make E_inf vanish above degree {top_dimension}")]
    Ambiguous { top_dimension: usize, count: usize, solutions: Vec<Vec<DifferentialSpec>> },
    #[error("p^2 divides |G| = {group_order} at p = {prime}; extensions need not split")]
    ExtensionAmbiguous { prime: u64, group_order: usize },
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("config error: {0}")]
    Config(String),
}
