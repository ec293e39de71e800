use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FiniteGroup, GrpcohError};
use crate::exactla::{kernel_basis, IntMatrix};

/// A `ZG`-lattice: the group acts on `Z^rank` by integer matrices on column vectors.
#[derive(Clone, Debug)]
pub struct GroupModule {
    pub name: String,
    group: Arc<FiniteGroup>,
    rank: usize,
    generator_action: Vec<IntMatrix>,
    action: Vec<IntMatrix>,
}

impl PartialEq for GroupModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.action == other.action
    }
}

impl GroupModule {
    /// Extends generator images to every element and checks the homomorphism property on the whole table.
    pub fn new(name: &str, group: Arc<FiniteGroup>, generator_action: Vec<IntMatrix>) -> Result<Self, GrpcohError> {
        if generator_action.len() != group.generators.len() {
            return Err(GrpcohError::BadModule(format!(
                "{name}: {} generator images for {} generators",
                generator_action.len(),
                group.generators.len()
            )));
        }
        let rank = generator_action.first().map_or(0, IntMatrix::rows);
        if generator_action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(GrpcohError::BadModule(format!("{name}: action matrices must be {rank}x{rank}")));
        }
        for (i, m) in generator_action.iter().enumerate() {
            if !m.is_unimodular() {
                return Err(GrpcohError::BadModule(format!("{name}: generator {i} is not invertible over Z")));
            }
        }
        let mut action = vec![IntMatrix::identity(rank); group.order()];
        for e in 0..group.order() {
            if let Some((gi, prev)) = group.parent[e] {
                action[e] = generator_action[gi].mul(&action[prev]);
            }
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if action[group.mul(a, b)] != action[a].mul(&action[b]) {
                    return Err(GrpcohError::NotAHomomorphism { module: name.to_string(), a, b });
                }
            }
        }
        Ok(GroupModule { name: name.to_string(), group, rank, generator_action, action })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_action(&self) -> &[IntMatrix] {
        &self.generator_action
    }

    /// Action matrix of the element with the given index.
    pub fn action(&self, element: usize) -> &IntMatrix {
        &self.action[element]
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let gens = vec![IntMatrix::identity(1); group.generators.len()];
        Self::new("trivial", group, gens).expect("trivial module")
    }

    pub fn sign(group: Arc<FiniteGroup>) -> Self {
        let gens = group
            .generators
            .iter()
            .map(|&g| IntMatrix::from_rows(&[[group.elements[g].sign()]]))
            .collect();
        Self::new("sign", group, gens).expect("sign module")
    }

    /// Rank-two quotient of the permutation module of `Σ3` on the images of `x1, x2`.
    pub fn standard(group: Arc<FiniteGroup>) -> Result<Self, GrpcohError> {
        if group.degree != 3 || group.order() != 6 {
            return Err(GrpcohError::BadModule("standard module is defined for S3 only".into()));
        }
        let gens = group
            .generators
            .iter()
            .map(|&g| {
                let w = &group.elements[g];
                // x_i ↦ x_{w(i)} with x3 = −x1 − x2
                let image = |i: usize| -> [i64; 2] {
                    match w.apply(i) {
                        0 => [1, 0],
                        1 => [0, 1],
                        _ => [-1, -1],
                    }
                };
                let (c0, c1) = (image(0), image(1));
                IntMatrix::from_rows(&[[c0[0], c1[0]], [c0[1], c1[1]]])
            })
            .collect();
        Self::new("standard", group, gens)
    }

    pub fn tensor(&self, other: &GroupModule) -> Result<Self, GrpcohError> {
        if self.group != other.group {
            return Err(GrpcohError::GroupMismatch);
        }
        let gens = self.generator_action.iter().zip(&other.generator_action).map(|(a, b)| a.kronecker(b)).collect();
        Self::new(&format!("{}⊗{}", self.name, other.name), self.group.clone(), gens)
    }

    pub fn direct_sum(&self, other: &GroupModule) -> Result<Self, GrpcohError> {
        if self.group != other.group {
            return Err(GrpcohError::GroupMismatch);
        }
        let gens = self
            .generator_action
            .iter()
            .zip(&other.generator_action)
            .map(|(a, b)| IntMatrix::block_diagonal(&[a, b]))
            .collect();
        Self::new(&format!("{}⊕{}", self.name, other.name), self.group.clone(), gens)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Trace of every element's action matrix.
    pub fn character(&self) -> Vec<BigInt> {
        self.action.iter().map(IntMatrix::trace).collect()
    }

    /// Fixed sublattice `M^G` as the kernel of the stacked `(ρ(g) − 1)` over all elements.
    pub fn invariants_brute_force(&self) -> Vec<Vec<BigInt>> {
        let n = self.rank;
        let blocks: Vec<IntMatrix> = self.action.iter().map(|a| a.sub(&IntMatrix::identity(n))).collect();
        let mut stacked = IntMatrix::zeros(n * blocks.len(), n);
        for (i, b) in blocks.iter().enumerate() {
            stacked.set_block(i * n, 0, b);
        }
        kernel_basis(&stacked)
    }

    /// Integer matrices `T` with `T·ρ_self(g) = ρ_other(g)·T` for every generator, as a lattice basis.
    pub fn intertwiners(&self, other: &GroupModule) -> Vec<IntMatrix> {
        let (n, m) = (self.rank, other.rank);
        // unknown T is m x n, flattened row-major
        let eqs = self.generator_action.len() * m * n;
        let mut sys = IntMatrix::zeros(eqs, m * n);
        for (g, (a, b)) in self.generator_action.iter().zip(&other.generator_action).enumerate() {
            for i in 0..m {
                for j in 0..n {
                    let row = g * m * n + i * n + j;
                    // (T a)_{ij} − (b T)_{ij}
                    for k in 0..n {
                        let idx = i * n + k;
                        let v = sys.get(row, idx) + a.get(k, j);
                        sys.set(row, idx, v);
                    }
                    for k in 0..m {
                        let idx = k * n + j;
                        let v = sys.get(row, idx) - b.get(i, k);
                        sys.set(row, idx, v);
                    }
                }
            }
        }
        kernel_basis(&sys)
            .into_iter()
            .map(|v| IntMatrix::from_vec(m, n, v))
            .collect()
    }

    /// Searches small integer combinations of intertwiners for a unimodular one.
    pub fn find_isomorphism(&self, other: &GroupModule) -> Option<IntMatrix> {
        if self.rank != other.rank || self.group != other.group {
            return None;
        }
        let basis = self.intertwiners(other);
        if basis.is_empty() {
            return if self.rank == 0 { Some(IntMatrix::zeros(0, 0)) } else { None };
        }
        let bound: i64 = 2;
        let k = basis.len();
        let mut coeffs = vec![-bound; k];
        loop {
            if coeffs.iter().any(|c| *c != 0) {
                let mut t = IntMatrix::zeros(other.rank, self.rank);
                for (c, b) in coeffs.iter().zip(&basis) {
                    if *c != 0 {
                        t = t.add(&b.scale(&BigInt::from(*c)));
                    }
                }
                if t.is_unimodular() {
                    return Some(t);
                }
            }
            let mut i = 0;
            while i < k && coeffs[i] == bound {
                coeffs[i] = -bound;
                i += 1;
            }
            if i == k {
                return None;
            }
            coeffs[i] += 1;
        }
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|a| *a == IntMatrix::identity(self.rank))
    }

    pub fn is_zero_module(&self) -> bool {
        self.rank == 0 || self.action.iter().all(|a| a.entries().iter().all(Zero::is_zero))
    }
}

/// Names accepted by [`catalog_module`], in canonical spelling.
pub const CATALOG_NAMES: [&str; 5] = ["trivial", "sign", "standard", "standard⊗standard", "standard⊗sign"];

fn canonical_name(name: &str) -> Option<&'static str> {
    let n = name.trim().to_lowercase().replace(['*', 'x', '⊗'], "(x)");
    let n = n.replace("(x)", "⊗").replace(' ', "");
    let n = n.as_str();
    Some(match n {
        "trivial" | "z" => "trivial",
        "sign" | "s" => "sign",
        "standard" | "m" | "m'" => "standard",
        "standard⊗standard" | "m⊗m" | "m⊗2" => "standard⊗standard",
        "standard⊗sign" | "m⊗s" | "m_s" | "ms" => "standard⊗sign",
        _ => return None,
    })
}

/// Looks up one of the bundled `Σ3` modules by name.
pub fn catalog_module(group: &Arc<FiniteGroup>, name: &str) -> Result<GroupModule, GrpcohError> {
    let canon = canonical_name(name).ok_or_else(|| GrpcohError::UnknownName(name.to_string()))?;
    let g = group.clone();
    Ok(match canon {
        "trivial" => GroupModule::trivial(g),
        "sign" => GroupModule::sign(g),
        "standard" => GroupModule::standard(g)?,
        "standard⊗standard" => {
            let m = GroupModule::standard(g)?;
            m.tensor(&m)?.renamed(canon)
        }
        _ => {
            let m = GroupModule::standard(g.clone())?;
            m.tensor(&GroupModule::sign(g))?.renamed(canon)
        }
    })
}

/// The five bundled `Σ3` modules `Z, S, M, M⊗M, M_S`.
pub fn standard_modules(group: &Arc<FiniteGroup>) -> Result<Vec<GroupModule>, GrpcohError> {
    CATALOG_NAMES.iter().map(|n| catalog_module(group, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcoh::symmetric_group;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(symmetric_group(3))
    }

    #[test]
    fn published_action_matrices() {
        let g = s3();
        let ms = catalog_module(&g, "standard⊗sign").unwrap();
        assert_eq!(ms.generator_action()[0], IntMatrix::from_rows(&[[0, -1], [1, -1]]));
        assert_eq!(ms.generator_action()[1], IntMatrix::from_rows(&[[0, -1], [-1, 0]]));
        let mm = catalog_module(&g, "standard⊗standard").unwrap();
        assert_eq!(
            mm.generator_action()[0],
            IntMatrix::from_rows(&[[0, 0, 0, 1], [0, 0, -1, 1], [0, -1, 0, 1], [1, -1, -1, 1]])
        );
        assert_eq!(
            mm.generator_action()[1],
            IntMatrix::from_rows(&[[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
        );
        let s = catalog_module(&g, "sign").unwrap();
        assert_eq!(s.generator_action()[0], IntMatrix::from_rows(&[[1]]));
        assert_eq!(s.generator_action()[1], IntMatrix::from_rows(&[[-1]]));
    }

    #[test]
    fn characters() {
        let g = s3();
        let m = catalog_module(&g, "standard").unwrap();
        let chi = m.character();
        assert_eq!(chi[g.identity], BigInt::from(2));
        assert_eq!(chi[g.generators[0]], BigInt::from(-1));
        assert_eq!(chi[g.generators[1]], BigInt::from(0));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = s3();
        let bad = vec![IntMatrix::from_rows(&[[-1]]), IntMatrix::from_rows(&[[1]])];
        assert!(matches!(GroupModule::new("bad", g, bad), Err(GrpcohError::NotAHomomorphism { .. })));
    }

    #[test]
    fn sign_squared_is_trivial() {
        let g = s3();
        let s = catalog_module(&g, "sign").unwrap();
        let ss = s.tensor(&s).unwrap();
        assert!(ss.find_isomorphism(&GroupModule::trivial(g.clone())).is_some());
        let m = catalog_module(&g, "standard").unwrap();
        let ms = catalog_module(&g, "M_S").unwrap();
        assert!(m.find_isomorphism(&ms).is_none());
    }

    #[test]
    fn name_aliases() {
        let g = s3();
        assert_eq!(catalog_module(&g, "M*M").unwrap().name, "standard⊗standard");
        assert!(matches!(catalog_module(&g, "nope"), Err(GrpcohError::UnknownName(_))));
    }
}
