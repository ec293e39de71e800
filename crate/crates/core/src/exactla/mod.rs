//! Exact linear algebra over Z, Q and F_p.

mod complex;
pub mod fp;
mod group;
mod lattice;
mod matrix;
mod rational;
mod series;
mod snf;

pub use complex::{cohomology_at, cohomology_dim_mod_p, ComplexError};
pub use fp::{fp_cohomology_dim, FpMatrix};
pub use group::AbelianGroup;
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use rational::{rank_rational, rref_rational};
pub use series::{mod_p_series, PoincareSeries};
pub use snf::{invariant_factors, kernel_basis, kernel_basis_reduced, rank, rank_mod_p, smith_normal_form, SnfDecomposition};

/// `p`-localized part of a group: free part plus `p`-power torsion.
pub fn p_primary(g: &AbelianGroup, p: u64) -> AbelianGroup {
    g.p_primary(p)
}
