use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::{CoinvError, CoinvariantAlgebra};
use crate::exactla::IntMatrix;
use crate::grpcoh::{catalog_module, symmetric_group, FiniteGroup, GroupModule, CATALOG_NAMES};

/// Short display name of a catalog module: `Z, S, M, M⊗M, M_S`.
pub fn short_name(catalog: &str) -> &str {
    match catalog {
        "trivial" => "Z",
        "sign" => "S",
        "standard" => "M",
        "standard⊗standard" => "M⊗M",
        "standard⊗sign" => "M_S",
        other => other,
    }
}

/// `Σ_n` acting on the polynomial-degree-`d` part of the coinvariant algebra, on the staircase basis.
pub fn sn_degree_representation_in(
    algebra: &CoinvariantAlgebra,
    group: &Arc<FiniteGroup>,
    d: u32,
) -> Result<GroupModule, CoinvError> {
    if d > algebra.top_degree() {
        return Err(CoinvError::DegreeOutOfRange { degree: 2 * d, max: 2 * algebra.top_degree() });
    }
    let basis = algebra.staircase_basis(d);
    let gens = group
        .generators
        .iter()
        .map(|&g| {
            let omega = &group.elements[g];
            let columns: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|b| algebra.coordinates(&algebra.act(omega, &algebra.monomial::<BigInt>(b)), d))
                .collect();
            IntMatrix::from_columns(basis.len(), &columns)
        })
        .collect();
    Ok(GroupModule::new(&format!("H^{}(Fl{})", 2 * d, algebra.n()), group.clone(), gens)?)
}

/// [`sn_degree_representation_in`] for `Σ_n` with its standard generators; `d` is the polynomial degree.
pub fn sn_degree_representation(n: usize, d: u32) -> Result<GroupModule, CoinvError> {
    let algebra = CoinvariantAlgebra::new(n)?;
    sn_degree_representation_in(&algebra, &Arc::new(symmetric_group(n)), d)
}

/// One tensor factor `H^{2a} ⊗ H^{2b}` of the Künneth decomposition and its catalog identification.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KunnethFactor {
    pub left_degree: u32,
    pub right_degree: u32,
    pub module: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KunnethDecomposition {
    /// Cohomological degree.
    pub degree: u32,
    pub factors: Vec<KunnethFactor>,
    /// Catalog names in catalog order, with multiplicity.
    pub summands: Vec<String>,
    pub character: Vec<i64>,
}

impl KunnethDecomposition {
    pub fn short_names(&self) -> Vec<&str> {
        self.summands.iter().map(|s| short_name(s)).collect()
    }
}

/// Decomposes `H^d(Fl3 × Fl3)` under the diagonal `Σ3`-action into catalog modules.
pub fn kunneth_decompose(d: u32) -> Result<KunnethDecomposition, CoinvError> {
    if d % 2 == 1 || d > 12 {
        return Err(CoinvError::DegreeOutOfRange { degree: d, max: 12 });
    }
    let algebra = CoinvariantAlgebra::new(3)?;
    let group = Arc::new(symmetric_group(3));
    let reps: Vec<GroupModule> = (0..=3)
        .map(|k| sn_degree_representation_in(&algebra, &group, k))
        .collect::<Result<_, _>>()?;
    let catalog: Vec<GroupModule> =
        CATALOG_NAMES.iter().map(|n| catalog_module(&group, n)).collect::<Result<_, _>>()?;
    let half = d / 2;
    let mut factors = Vec::new();
    let mut character = vec![BigInt::from(0); group.order()];
    for a in 0..=3u32 {
        let Some(b) = half.checked_sub(a).filter(|b| *b <= 3) else { continue };
        let factor = reps[a as usize].tensor(&reps[b as usize])?;
        for (acc, x) in character.iter_mut().zip(factor.character()) {
            *acc += x;
        }
        let module = catalog
            .iter()
            .find(|c| c.rank() == factor.rank() && factor.find_isomorphism(c).is_some())
            .ok_or(CoinvError::DecompositionAmbiguous { degree: d })?;
        factors.push(KunnethFactor { left_degree: 2 * a, right_degree: 2 * b, module: module.name.clone() });
    }
    let mut summands: Vec<String> = factors.iter().map(|f| f.module.clone()).collect();
    summands.sort_by_key(|s| CATALOG_NAMES.iter().position(|c| c == s));
    let mut expected = vec![BigInt::from(0); group.order()];
    for s in &summands {
        let m = &catalog[CATALOG_NAMES.iter().position(|c| c == s).unwrap()];
        for (acc, x) in expected.iter_mut().zip(m.character()) {
            *acc += x;
        }
    }
    if expected != character {
        return Err(CoinvError::DecompositionAmbiguous { degree: d });
    }
    let character = character.iter().map(|x| i64::try_from(x).expect("small character")).collect();
    Ok(KunnethDecomposition { degree: d, factors, summands, character })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_three_is_sign() {
        let m = sn_degree_representation(3, 3).unwrap();
        assert_eq!(m.rank(), 1);
        let g = m.group().clone();
        for (e, p) in g.elements.iter().enumerate() {
            assert_eq!(m.action(e).get(0, 0), &BigInt::from(p.sign()));
        }
    }

    #[test]
    fn degree_six_decomposition() {
        let k = kunneth_decompose(6).unwrap();
        assert_eq!(k.short_names(), vec!["S", "S", "M⊗M", "M⊗M"]);
    }

    #[test]
    fn odd_degree_rejected() {
        assert!(kunneth_decompose(5).is_err());
    }
}
