use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::tensor::{TensorAlgebra, TensorClass, TensorReport};
use super::CoinvError;
use crate::exactla::{rref_rational, PoincareSeries};
use crate::grpcoh::Permutation;

type Q = BigRational;

fn q(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// Exponents of the named basis monomials `ρ(x^a ⊗ y^b)` of the diagonal invariants of `Fl3 × Fl3`.
pub const INVARIANT_BASIS: [(&str, [u32; 3], [u32; 3]); 6] = [
    ("1", [0, 0, 0], [0, 0, 0]),
    ("ρ(x1⊗y2)", [1, 0, 0], [0, 1, 0]),
    ("ρ(x1⊗y2y3)", [1, 0, 0], [0, 1, 1]),
    ("ρ(x1x2⊗y3)", [1, 1, 0], [0, 0, 1]),
    ("ρ(x1x2⊗y2y3)", [1, 1, 0], [0, 1, 1]),
    ("ρ(x1²x2⊗y3²y2)", [2, 1, 0], [0, 1, 2]),
];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisClass {
    pub name: String,
    pub degree: u32,
    pub class: TensorReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DescentClass {
    /// One-line notation, 1-based.
    pub permutation: Vec<usize>,
    pub maj: usize,
    pub maj_inverse: usize,
    /// `2(maj(ω) + maj(ω⁻¹))`.
    pub degree: u32,
    /// Name of the basis class that `ρ(f_ω)` is a nonzero multiple of.
    pub basis_class: String,
    pub scalar: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub class: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NormalMonomial {
    pub monomial: String,
    pub degree: u32,
}

/// The rational invariant ring with its presentation and every check that produced it.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingPresentation {
    pub ring: String,
    pub generators: Vec<Generator>,
    /// `Q[γ4, γ6, γ̃6]/(γ4³, γ6², γ̃6², γ4γ6, γ4γ̃6)` as stated.
    pub printed_text: String,
    pub printed_relations: Vec<String>,
    /// Each stated monomial relation evaluated on the chosen generators.
    pub printed_relation_checks: Vec<RelationCheck>,
    /// Normal monomials and series of the stated quotient.
    pub normal_monomials: Vec<NormalMonomial>,
    pub poincare: PoincareSeries,
    /// Minimal relations the generators satisfy in the invariant ring.
    pub derived_text: String,
    pub derived_relations: Vec<String>,
    pub derived_basis: Vec<NormalMonomial>,
    pub derived_poincare: PoincareSeries,
    pub basis: Vec<BasisClass>,
    pub descent: Vec<DescentClass>,
    /// Products among the named basis classes.
    pub relation_checks: Vec<RelationCheck>,
    pub all_relations_hold: bool,
    /// Degree 8 and 12 products in the named basis, as `(monomial, expression)`.
    pub change_of_basis: Vec<(String, String)>,
    pub invariant_dimension: usize,
}

/// Exponent vectors `(a, b, c)` of `γ4^a γ6^b γ̃6^c` that avoid the monomial relations, up to `max_degree`.
pub fn presented_normal_monomials(relations: &[[u32; 3]], degrees: [u32; 3], max_degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    let bound = |d: u32| max_degree / d;
    for a in 0..=bound(degrees[0]) {
        for b in 0..=bound(degrees[1]) {
            for c in 0..=bound(degrees[2]) {
                let e = [a, b, c];
                let deg: u32 = e.iter().zip(degrees).map(|(x, d)| x * d).sum();
                if deg > max_degree {
                    continue;
                }
                if relations.iter().any(|r| r.iter().zip(&e).all(|(ri, ei)| ei >= ri)) {
                    continue;
                }
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| (e.iter().zip(degrees).map(|(x, d)| x * d).sum::<u32>(), std::cmp::Reverse(*e)));
    out
}

fn monomial_name(e: &[u32; 3], names: [&str; 3]) -> String {
    let mut s = String::new();
    for (k, name) in e.iter().zip(names) {
        match k {
            0 => {}
            1 => s.push_str(name),
            _ => s.push_str(&format!("{name}^{k}")),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Scalar `λ` with `t = λ·b`, if `t` is a multiple of the nonzero class `b`.
fn multiple_of(t: &TensorClass<Q>, b: &TensorClass<Q>) -> Option<Q> {
    let (key, bc) = b.coefficients().iter().next()?;
    let lambda = t.coefficients().get(key).cloned().unwrap_or_else(Q::zero) / bc.clone();
    (b.scale(&lambda) == *t).then_some(lambda)
}

/// Coefficients `c` with `v = Σ c_i·basis_i`, if `v` lies in the span of the independent family `basis`.
fn express(t: &TensorAlgebra, v: &TensorClass<Q>, basis: &[&TensorClass<Q>]) -> Option<Vec<Q>> {
    let cols: Vec<Vec<Q>> = basis.iter().map(|b| t.coordinates(b)).collect();
    let target = t.coordinates(v);
    let rows: Vec<Vec<Q>> = (0..target.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(target[r].clone())).collect())
        .collect();
    let (reduced, pivots) = rref_rational(rows);
    if pivots.contains(&basis.len()) {
        return None;
    }
    let mut c = vec![Q::zero(); basis.len()];
    for (row, &p) in reduced.iter().zip(&pivots) {
        c[p] = row[basis.len()].clone();
    }
    Some(c)
}

fn degree_of(e: &[u32; 3], degrees: [u32; 3]) -> u32 {
    e.iter().zip(degrees).map(|(x, d)| x * d).sum()
}

/// Builds the full report: the printed relations checked one by one, the descent basis, and the
/// relations actually satisfied by the chosen generators.
pub fn invariant_ring_report() -> Result<RingPresentation, CoinvError> {
    let t = TensorAlgebra::new(3)?;
    let rho = |a: &[u32; 3], b: &[u32; 3]| t.averaging(&t.pure::<Q>(a, b));
    let b: Vec<TensorClass<Q>> =
        INVARIANT_BASIS.iter().map(|(_, a, c)| rho(a, c)).collect::<Result<_, _>>()?;
    let names: Vec<&str> = INVARIANT_BASIS.iter().map(|(n, _, _)| *n).collect();

    let mut checks = Vec::new();
    let mut record = |name: &str, statement: String, holds: bool| {
        checks.push(RelationCheck { name: name.to_string(), statement, holds });
    };
    // (i) 2ρ(x1⊗y2)² = −ρ(x1x2⊗y2y3)
    let lhs = t.multiply(&b[1], &b[1]).scale(&q(2, 1));
    record("(i)", format!("2·{}² = −{}", names[1], names[4]), lhs == b[4].scale(&q(-1, 1)));
    // (ii) 3ρ(x1⊗y2y3)·ρ(x1x2⊗y3) = 2ρ(x1²x2⊗y3²y2)
    let lhs = t.multiply(&b[2], &b[3]).scale(&q(3, 1));
    record("(ii)", format!("3·{}·{} = 2·{}", names[2], names[3], names[5]), lhs == b[5].scale(&q(2, 1)));
    // (iii) all other products of non-unit basis classes vanish
    for i in 1..6 {
        for j in i..6 {
            if (i, j) == (1, 1) || (i, j) == (2, 3) {
                continue;
            }
            let prod = t.multiply(&b[i], &b[j]);
            record(&format!("(iii) {}·{}", names[i], names[j]), format!("{}·{} = 0", names[i], names[j]), prod.is_zero());
        }
    }

    // descent monomials: each ρ(f_ω) is a nonzero multiple of one named class
    let mut descent = Vec::new();
    let mut seen = Vec::new();
    for omega in Permutation::all(3) {
        let f = t.averaging(&t.descent_monomial::<Q>(&omega))?;
        let (idx, lambda) = b
            .iter()
            .enumerate()
            .find_map(|(k, bk)| multiple_of(&f, bk).filter(|l| !l.is_zero()).map(|l| (k, l)))
            .ok_or_else(|| CoinvError::Internal(format!("ρ(f_ω) for {omega:?} is not a basis multiple")))?;
        seen.push(idx);
        let (maj, maj_inv) = (omega.major_index(), omega.inverse().major_index());
        descent.push(DescentClass {
            permutation: omega.0.iter().map(|x| x + 1).collect(),
            maj,
            maj_inverse: maj_inv,
            degree: 2 * (maj + maj_inv) as u32,
            basis_class: names[idx].to_string(),
            scalar: lambda.to_string(),
        });
    }
    seen.sort_unstable();
    if seen != (0..6).collect::<Vec<_>>() {
        return Err(CoinvError::Internal("descent classes do not hit every basis class".into()));
    }
    let invariant_dimension = t.invariant_dimension()?;
    if t.rank(&b) != 6 || invariant_dimension != 6 || b.iter().any(|c| !t.is_invariant(c)) {
        return Err(CoinvError::Internal("named classes do not form a basis of the invariants".into()));
    }

    let gens = [("γ4", 4u32, 1usize), ("γ6", 6, 2), ("γ̃6", 6, 3)];
    let gen_names = [gens[0].0, gens[1].0, gens[2].0];
    let gen_degrees = [4, 6, 6];
    let eval = |e: &[u32; 3]| {
        let mut acc = t.one::<Q>();
        for (k, &(_, _, idx)) in e.iter().zip(&gens) {
            for _ in 0..*k {
                acc = t.multiply(&acc, &b[idx]);
            }
        }
        acc
    };
    let max_degree = 24;

    // the printed quotient and whether its monomial relations hold for the chosen generators
    let printed: [[u32; 3]; 5] = [[3, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1]];
    let printed_relations: Vec<String> = printed.iter().map(|r| monomial_name(r, gen_names)).collect();
    let printed_relation_checks = printed
        .iter()
        .map(|r| {
            let name = monomial_name(r, gen_names);
            RelationCheck { statement: format!("{name} = 0"), holds: eval(r).is_zero(), name }
        })
        .collect();
    let normal = presented_normal_monomials(&printed, gen_degrees, max_degree);
    let mut coeffs = vec![0u64; max_degree as usize + 1];
    let normal_monomials: Vec<NormalMonomial> = normal
        .iter()
        .map(|e| {
            let degree = degree_of(e, gen_degrees);
            coeffs[degree as usize] += 1;
            NormalMonomial { monomial: monomial_name(e, gen_names), degree }
        })
        .collect();
    let poincare = PoincareSeries::new(coeffs);

    // relations actually satisfied: scan monomials by degree, keep the independent ones as basis
    let mut all: Vec<[u32; 3]> = Vec::new();
    for a in 0..=max_degree / 4 {
        for bb in 0..=max_degree / 6 {
            for c in 0..=max_degree / 6 {
                let e = [a, bb, c];
                if degree_of(&e, gen_degrees) <= max_degree {
                    all.push(e);
                }
            }
        }
    }
    all.sort_by_key(|e| (degree_of(e, gen_degrees), *e));
    let mut derived_basis: Vec<([u32; 3], TensorClass<Q>)> = Vec::new();
    let mut reducible: Vec<[u32; 3]> = Vec::new();
    let mut derived_relations = Vec::new();
    for e in &all {
        let divisible = (0..3).any(|i| {
            e[i] > 0 && {
                let mut d = *e;
                d[i] -= 1;
                reducible.contains(&d)
            }
        });
        if divisible {
            reducible.push(*e);
            continue;
        }
        let v = eval(e);
        let same: Vec<&([u32; 3], TensorClass<Q>)> =
            derived_basis.iter().filter(|(m, _)| degree_of(m, gen_degrees) == degree_of(e, gen_degrees)).collect();
        let family: Vec<&TensorClass<Q>> = same.iter().map(|(_, c)| c).collect();
        match express(&t, &v, &family) {
            Some(c) => {
                let mut text = monomial_name(e, gen_names);
                for (ci, (m, _)) in c.iter().zip(&same) {
                    if ci.is_zero() {
                        continue;
                    }
                    let neg = -ci.clone();
                    let sign = if neg < Q::zero() { " - " } else { " + " };
                    let abs = if neg < Q::zero() { -neg } else { neg };
                    text.push_str(&format!("{sign}{abs}·{}", monomial_name(m, gen_names)));
                }
                derived_relations.push(text);
                reducible.push(*e);
            }
            None => derived_basis.push((*e, v)),
        }
    }
    let mut dcoeffs = vec![0u64; max_degree as usize + 1];
    let derived_normal: Vec<NormalMonomial> = derived_basis
        .iter()
        .map(|(e, _)| {
            let degree = degree_of(e, gen_degrees);
            dcoeffs[degree as usize] += 1;
            NormalMonomial { monomial: monomial_name(e, gen_names), degree }
        })
        .collect();
    if derived_basis.len() != invariant_dimension {
        return Err(CoinvError::Internal("generators do not span the invariants".into()));
    }

    let s8 = multiple_of(&eval(&[2, 0, 0]), &b[4]).ok_or_else(|| CoinvError::Internal("γ4² off the degree-8 line".into()))?;
    let s12 =
        multiple_of(&eval(&[0, 1, 1]), &b[5]).ok_or_else(|| CoinvError::Internal("γ6γ̃6 off the degree-12 line".into()))?;
    let change_of_basis = vec![
        ("γ4^2".to_string(), format!("{}·{}", s8, names[4])),
        ("γ6γ̃6".to_string(), format!("{}·{}", s12, names[5])),
    ];
    let basis = INVARIANT_BASIS
        .iter()
        .zip(&b)
        .map(|((name, _, _), class)| BasisClass {
            name: name.to_string(),
            degree: class.degree().unwrap_or(0),
            class: class.into(),
        })
        .collect();
    let generators = gens
        .iter()
        .map(|(name, degree, idx)| Generator { name: name.to_string(), degree: *degree, class: names[*idx].to_string() })
        .collect();
    let all_relations_hold = checks.iter().all(|c| c.holds);
    Ok(RingPresentation {
        ring: "Q".into(),
        generators,
        printed_text: format!("Q[{}]/({})", gen_names.join(", "), printed_relations.join(", ")),
        printed_relations,
        printed_relation_checks,
        normal_monomials,
        poincare,
        derived_text: format!("Q[{}]/({})", gen_names.join(", "), derived_relations.join(", ")),
        derived_relations,
        derived_basis: derived_normal,
        derived_poincare: PoincareSeries::new(dcoeffs),
        basis,
        descent,
        relation_checks: checks,
        all_relations_hold,
        change_of_basis,
        invariant_dimension,
    })
}

/// The product relations among the invariant basis, failing with the first relation whose sides differ.
pub fn invariant_ring_presentation() -> Result<RingPresentation, CoinvError> {
    let report = invariant_ring_report()?;
    if let Some(c) = report.relation_checks.iter().find(|c| !c.holds) {
        return Err(CoinvError::RelationFailure { relation: c.name.clone() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_monomials_of_presentation() {
        let rel = [[3, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1]];
        let m = presented_normal_monomials(&rel, [4, 6, 6], 30);
        let names: Vec<String> = m.iter().map(|e| monomial_name(e, ["γ4", "γ6", "γ̃6"])).collect();
        assert_eq!(names, vec!["1", "γ4", "γ6", "γ̃6", "γ4^2", "γ6γ̃6"]);
    }
}
