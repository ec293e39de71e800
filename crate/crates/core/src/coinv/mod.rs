//! Coinvariant algebras of `Σ_n`, their representations, and the diagonal invariant ring of `Fl3 × Fl3`.

mod algebra;
mod poly;
mod repr;
mod ring;
mod scalar;
mod tensor;

use thiserror::Error;

use crate::grpcoh::GrpcohError;

pub use algebra::{is_staircase, monomials_of_degree, CoinvariantAlgebra, CoinvariantElement, ElementReport};
pub use poly::{parse_polynomial, Monomial, Polynomial};
pub use repr::{
    kunneth_decompose, short_name, sn_degree_representation, sn_degree_representation_in, KunnethDecomposition,
    KunnethFactor,
};
pub use ring::{
    invariant_ring_presentation, invariant_ring_report, presented_normal_monomials, BasisClass, DescentClass, Generator, NormalMonomial,
    RelationCheck, RingPresentation, INVARIANT_BASIS,
};
pub use scalar::{Fp, Scalar};
pub use tensor::{coefficient_at, TensorAlgebra, TensorClass, TensorReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoinvError {
    #[error("rank {0} is not supported (1..=5)")]
    UnsupportedRank(usize),
    #[error("degree {degree} out of range (max {max})")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("averaging needs rational scalars, got {ring}")]
    NonRationalScalars { ring: String },
    #[error("no catalog decomposition found in degree {degree}")]
    DecompositionAmbiguous { degree: u32 },
    #[error("relation {relation} fails")]
    RelationFailure { relation: String },
    #[error("coefficient {coefficient} is not in {ring}")]
    CoefficientNotInRing { coefficient: String, ring: String },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Grpcoh(#[from] GrpcohError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Normal form of a text polynomial in `x1..xn`, over Q.
pub fn normal_form_text(text: &str, n: usize) -> Result<CoinvariantElement<num_rational::BigRational>, CoinvError> {
    let algebra = CoinvariantAlgebra::new(n)?;
    let p = parse_polynomial(text, n)?;
    if p.terms().keys().any(|m| m[n..].iter().any(|&e| e > 0)) {
        return Err(CoinvError::Parse { position: 0, message: "y variables are not allowed here".into() });
    }
    let mut x = Polynomial::zero(n);
    for (m, c) in p.terms() {
        x.add_term(m[..n].to_vec(), c.clone());
    }
    Ok(algebra.normal_form(&x))
}
