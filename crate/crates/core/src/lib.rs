//! Exact engines reproducing the mod 2, mod 3 and rational cohomology of `E_com U(3)`.
//!
//! The crate is layered bottom-up: [`exactla`] supplies integer and F_p linear algebra,
//! [`grpcoh`] computes group cohomology from free resolutions, [`coinv`] handles the
//! coinvariant algebra of the flag manifold, [`specseq`] turns spectral sequence pages,
//! [`holim`] computes higher limits over `S(n)`, and [`pipeline`] wires them into reports.

pub mod exactla;
pub mod grpcoh;
pub mod coinv;
pub mod specseq;
pub mod holim;
pub mod pipeline;


mod provenance;
pub use provenance::Provenance;
