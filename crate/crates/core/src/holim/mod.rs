//! Higher limits over the poset `S(n)` and the Bousfield–Kan assembly for `E_com U(3)`.

mod complex;
mod diagram;
mod poset;
mod robustness;

use thiserror::Error;

pub use complex::{bk_assemble, cosimplicial_complex, higher_limits, lim2_vanishing_check, BkAssembly, CosimplicialComplex, Limits};
pub use diagram::{ArrowMaps, ConstraintKind, MapConstraint, PosetDiagram, DIAGRAM_SCHEMA, ECOM_U3_P2, ECOM_U3_P3};
pub use poset::{poset, PosetSn};
pub use robustness::{
    interval_decompositions, interval_pieces, piece_limits, robustness_all, robustness_check, RobustnessReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolimError {
    #[error("no bundled diagram at p = {0}")]
    UnsupportedPrime(u64),
    #[error("diagram is not a functor: chain {chain:?} fails in degree {degree}")]
    FunctorialityViolation { chain: [String; 3], degree: usize },
    #[error("map {source_object} → {target_object} in degree {degree} is {got:?}, expected {expected:?}")]
    ShapeMismatch { source_object: String, target_object: String, degree: usize, expected: (usize, usize), got: (usize, usize) },
    #[error("map {source_object} → {target_object} in degree {degree} is not {kind:?}")]
    ConstraintViolation { kind: ConstraintKind, source_object: String, target_object: String, degree: usize },
    #[error("lim^2 has dimension {dim} in degree {degree}")]
    NonVanishingLim2 { degree: usize, dim: usize },
    #[error("bad diagram: {0}")]
    BadDiagram(String),
}
