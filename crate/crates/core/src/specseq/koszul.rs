use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SpecseqError;
use crate::exactla::fp::is_prime;
use crate::exactla::{FpMatrix, PoincareSeries};

/// Total-degree truncation of the Koszul model.
pub const KOSZUL_TRUNCATION: usize = 16;

type Exponents = Vec<u32>;

/// Polynomial in `β_1, …, β_k` with integer coefficients; `deg β_j = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BetaPolynomial {
    pub nvars: usize,
    #[serde(with = "term_list")]
    pub terms: BTreeMap<Exponents, BigInt>,
}

impl BetaPolynomial {
    pub fn zero(nvars: usize) -> Self {
        BetaPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        let v = self.terms.remove(&e).unwrap_or_default() + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// Homogeneous part of polynomial degree `d` (cohomological degree `2d`).
    pub fn homogeneous(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect();
        BetaPolynomial { nvars: self.nvars, terms }
    }

    pub fn reduce_mod(&self, p: u64) -> FpPolynomial {
        let pb = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&pb).to_u64().expect("residue fits");
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        FpPolynomial { p, nvars: self.nvars, terms }
    }
}

impl fmt::Display for BetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Exponents, String)> = self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect();
        f.write_str(&format_beta(&terms))
    }
}

/// Polynomial in the `β_j` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpPolynomial {
    pub p: u64,
    pub nvars: usize,
    #[serde(with = "term_list")]
    pub terms: BTreeMap<Exponents, u64>,
}

impl FpPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Exponents, String)> = self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect();
        f.write_str(&format_beta(&terms))
    }
}

/// Terms in descending lexicographic order, e.g. `β1^2 + 2β1β2`.
fn format_beta(terms: &[(Exponents, String)]) -> String {
    let mut out = String::new();
    for (e, c) in terms.iter().rev() {
        let mono: String = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("β{}", i + 1) } else { format!("β{}^{k}", i + 1) })
            .collect();
        let (neg, abs) = match c.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, c.as_str()),
        };
        if !out.is_empty() {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        match (abs, mono.is_empty()) {
            (_, true) => out.push_str(abs),
            ("1", false) => out.push_str(&mono),
            _ => out.push_str(&format!("{abs}{mono}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

mod term_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, C: ToString>(m: &BTreeMap<Vec<u32>, C>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(Vec<u32>, String)> = m.iter().map(|(e, c)| (e.clone(), c.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, C: std::str::FromStr>(d: D) -> Result<BTreeMap<Vec<u32>, C>, D::Error> {
        let v: Vec<(Vec<u32>, String)> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|(e, c)| c.parse().map(|c| (e, c)).map_err(|_| serde::de::Error::custom(format!("bad coefficient {c}"))))
            .collect()
    }
}

/// Chern classes `c_1, …, c_n` of a sum of `n` line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernVector {
    pub nvars: usize,
    pub classes: Vec<BetaPolynomial>,
}

impl ChernVector {
    /// `1 + c_1 + … + c_n`.
    pub fn total(&self) -> BetaPolynomial {
        let mut t = BetaPolynomial::one(self.nvars);
        for c in &self.classes {
            for (e, x) in &c.terms {
                t.add_term(e.clone(), x.clone());
            }
        }
        t
    }
}

/// Whitney product `Π_i (1 + Σ_j a_ij β_j)` split into homogeneous parts.
///
/// Row `i` of `weights` is the multidegree of the `i`-th line bundle.
pub fn whitney_chern(weights: &[Vec<i64>]) -> ChernVector {
    let nvars = weights.first().map_or(0, Vec::len);
    let mut total = BetaPolynomial::one(nvars);
    for row in weights {
        let mut factor = BetaPolynomial::one(nvars);
        for (j, &a) in row.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[j] = 1;
            factor.add_term(e, BigInt::from(a));
        }
        total = total.mul(&factor);
    }
    let classes = (1..=weights.len() as u32).map(|d| total.homogeneous(d)).collect();
    ChernVector { nvars, classes }
}

/// Weights of `η = ξ_1 ⊕ ξ_1 ⊕ ξ_2` over `(CP^∞)²` for `T(2) ⊂ U(3)`.
pub fn u3t2_weights() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![1, 0], vec![0, 1]]
}

/// `Λ[z_1, z_3, …, z_{2n−1}] ⊗ F_p[β_1, …, β_k]` with `d z_{2i−1} = c_i`.
#[derive(Clone, Debug)]
pub struct KoszulModel {
    p: u64,
    nvars: usize,
    transgressions: Vec<FpPolynomial>,
    truncation: usize,
    bases: Vec<Vec<(u32, Exponents)>>,
}

fn beta_monomials(nvars: usize, d: u32) -> Vec<Exponents> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in beta_monomials(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl KoszulModel {
    pub fn new(chern: &ChernVector, p: u64, truncation: usize) -> Result<Self, SpecseqError> {
        if !is_prime(p) {
            return Err(SpecseqError::UnsupportedPrime(p));
        }
        let transgressions: Vec<FpPolynomial> = chern.classes.iter().map(|c| c.reduce_mod(p)).collect();
        let mut model = KoszulModel { p, nvars: chern.nvars, transgressions, truncation, bases: Vec::new() };
        model.bases = (0..=truncation + 1).map(|n| model.enumerate_basis(n)).collect();
        Ok(model)
    }

    pub fn exterior_degree(i: usize) -> usize {
        2 * i + 1
    }

    fn exterior_count(&self) -> usize {
        self.transgressions.len()
    }

    fn subset_degree(&self, s: u32) -> usize {
        (0..self.exterior_count()).filter(|i| s >> i & 1 == 1).map(Self::exterior_degree).sum()
    }

    fn enumerate_basis(&self, n: usize) -> Vec<(u32, Exponents)> {
        let mut out = Vec::new();
        for s in 0..(1u32 << self.exterior_count()) {
            let z = self.subset_degree(s);
            if z > n || (n - z) % 2 == 1 {
                continue;
            }
            for m in beta_monomials(self.nvars, ((n - z) / 2) as u32) {
                out.push((s, m));
            }
        }
        out
    }

    pub fn basis(&self, n: usize) -> &[(u32, Exponents)] {
        &self.bases[n]
    }

    fn index(&self, n: usize, key: &(u32, Exponents)) -> usize {
        self.bases[n].iter().position(|k| k == key).expect("basis element in range")
    }

    /// `d : K^n → K^{n+1}` as a matrix with one column per source basis element.
    pub fn differential(&self, n: usize) -> FpMatrix {
        let p = self.p;
        let (src, tgt) = (&self.bases[n], &self.bases[n + 1]);
        let mut m = FpMatrix::zeros(p, tgt.len(), src.len());
        for (col, (s, a)) in src.iter().enumerate() {
            let mut before = 0;
            for k in 0..self.exterior_count() {
                if s >> k & 1 == 0 {
                    continue;
                }
                let sign: i64 = if before % 2 == 0 { 1 } else { -1 };
                before += 1;
                for (e, &c) in &self.transgressions[k].terms {
                    let b: Exponents = a.iter().zip(e).map(|(x, y)| x + y).collect();
                    let row = self.index(n + 1, &(s & !(1 << k), b));
                    m.add_at(row, col, sign * c as i64);
                }
            }
        }
        m
    }

    /// `dim H^n` of the Koszul complex for `n ≤ truncation`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.truncation).map(|n| self.differential(n).rank()).collect();
        (0..=self.truncation)
            .map(|n| self.bases[n].len() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect()
    }

    fn vector(&self, n: usize, terms: &BTreeMap<(u32, Exponents), u64>) -> Vec<u64> {
        let mut v = vec![0; self.bases[n].len()];
        for (k, &c) in terms {
            v[self.index(n, k)] = c % self.p;
        }
        v
    }

    /// Product of two homogeneous elements given by coordinates.
    pub fn multiply(&self, n: usize, a: &[u64], m: usize, b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; if n + m <= self.truncation + 1 { self.bases[n + m].len() } else { 0 }];
        if out.is_empty() {
            return out;
        }
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            let (s, e) = &self.bases[n][i];
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                let (t, f) = &self.bases[m][j];
                if s & t != 0 {
                    continue;
                }
                // sign of moving each z in t past the larger z in s
                let swaps: u32 = (0..32).filter(|k| t >> k & 1 == 1).map(|k| (s >> k).count_ones() - (s >> k & 1)).sum();
                let sum: Exponents = e.iter().zip(f).map(|(u, v)| u + v).collect();
                let idx = self.index(n + m, &(s | t, sum));
                let val = x * y % p;
                out[idx] = if swaps % 2 == 0 { (out[idx] + val) % p } else { (out[idx] + p - val) % p };
            }
        }
        out
    }

    /// True if `v ∈ K^n` is a cycle.
    pub fn is_cycle(&self, n: usize, v: &[u64]) -> bool {
        self.differential(n).mul_vec(v).iter().all(|&x| x == 0)
    }

    /// True if `v ∈ K^n` lies in the image of `d : K^{n−1} → K^n`.
    pub fn is_boundary(&self, n: usize, v: &[u64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if n == 0 {
            return false;
        }
        let d = self.differential(n - 1);
        let col = FpMatrix { p: self.p, rows: v.len(), cols: 1, data: v.to_vec() };
        d.rank() == d.hstack(&col).rank()
    }

    /// A cycle in degree `2i+1` whose `z_{2i+1}` coordinate is 1, if one exists.
    pub fn lift_exterior(&self, i: usize) -> Option<Vec<u64>> {
        let n = Self::exterior_degree(i);
        let key = (1u32 << i, vec![0; self.nvars]);
        let pos = self.index(n, &key);
        let ker = self.differential(n).kernel();
        let v = ker.iter().find(|v| v[pos] != 0)?;
        let inv = crate::exactla::fp::inv_mod(v[pos], self.p);
        Some(v.iter().map(|x| x * inv % self.p).collect())
    }

    pub fn beta_power(&self, j: usize, k: u32) -> Vec<u64> {
        let mut e = vec![0; self.nvars];
        e[j] = k;
        let mut t = BTreeMap::new();
        t.insert((0u32, e), 1);
        self.vector(2 * k as usize, &t)
    }
}

/// Normal form of `f` modulo the ideal `(g_1, …)` in its degree, preferring monomials rich in `β_1`.
pub fn reduce_modulo(f: &FpPolynomial, ideal: &[FpPolynomial]) -> FpPolynomial {
    let p = f.p;
    let Some(d) = f.degree() else { return f.clone() };
    // columns from β_k-heavy to β_1-heavy so pivots eliminate the former
    let mut cols = beta_monomials(f.nvars, d);
    cols.reverse();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in ideal {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in beta_monomials(f.nvars, d - dg) {
            let mut row = vec![0; cols.len()];
            for (e, &c) in &g.terms {
                let s: Exponents = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                let idx = cols.iter().position(|x| *x == s).expect("monomial of degree d");
                row[idx] = (row[idx] + c) % p;
            }
            rows.push(row);
        }
    }
    let mut v: Vec<u64> = cols.iter().map(|e| f.terms.get(e).copied().unwrap_or(0)).collect();
    if !rows.is_empty() {
        let m = FpMatrix { p, rows: rows.len(), cols: cols.len(), data: rows.concat() };
        let (r, pivots) = m.rref();
        for (i, &pc) in pivots.iter().enumerate() {
            let k = v[pc];
            if k != 0 {
                for (j, x) in v.iter_mut().enumerate() {
                    *x = (*x + p * p - k * r.get(i, j) % p) % p;
                }
            }
        }
    }
    let terms = cols.into_iter().zip(v).filter(|(_, c)| *c != 0).collect();
    FpPolynomial { p, nvars: f.nvars, terms }
}

/// One transgression `d_{2i}(z_{2i−1}) = c_i`, read on the page where it acts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transgression {
    pub generator: String,
    pub page: usize,
    /// `c_i` with integer coefficients.
    pub chern_class: String,
    /// `c_i mod p`.
    pub mod_p: String,
    /// `c_i` modulo the images of the earlier transgressions.
    pub on_page: String,
    pub vanishes: bool,
}

/// Generator of a presented graded ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingGenerator {
    pub name: String,
    pub degree: usize,
}

/// Ring structure of `H*(U(3)/T(2); F_p)` read off the Koszul model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct U3T2Cohomology {
    pub prime: u64,
    pub chern: ChernVector,
    pub transgressions: Vec<Transgression>,
    pub generators: Vec<RingGenerator>,
    pub relations: Vec<String>,
    pub presentation: String,
    pub series: PoincareSeries,
    /// Koszul homology dimensions in degrees `0..=truncation`.
    pub homology_dims: Vec<usize>,
    pub total_dimension: usize,
    pub top_degree: usize,
    /// Named ring identities checked on cycle representatives.
    pub ring_checks: Vec<(String, bool)>,
}

/// `H*(U(3)/T(2); F_p)` from `E_2 = Λ[z1,z3,z5] ⊗ F_p[β1,β2]` with Chern-class transgressions.
pub fn u3t2_cohomology(p: u64) -> Result<U3T2Cohomology, SpecseqError> {
    koszul_cohomology(&whitney_chern(&u3t2_weights()), p)
}

/// Koszul computation for an arbitrary Chern vector in two base classes.
pub fn koszul_cohomology(chern: &ChernVector, p: u64) -> Result<U3T2Cohomology, SpecseqError> {
    let model = KoszulModel::new(chern, p, KOSZUL_TRUNCATION)?;
    let reduced: Vec<FpPolynomial> = chern.classes.iter().map(|c| c.reduce_mod(p)).collect();
    let transgressions: Vec<Transgression> = chern
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let on_page = reduce_modulo(&reduced[i], &reduced[..i]);
            Transgression {
                generator: format!("z{}", 2 * i + 1),
                page: 2 * (i + 1),
                chern_class: c.to_string(),
                mod_p: reduced[i].to_string(),
                on_page: on_page.to_string(),
                vanishes: on_page.is_zero(),
            }
        })
        .collect();

    let dims = model.homology_dims();
    let series = PoincareSeries::new(dims.iter().map(|&d| d as u64).collect());

    // β = β_1 and its nilpotency order in the quotient by all transgressions
    let beta_order = (1..=(KOSZUL_TRUNCATION / 2) as u32)
        .find(|&k| model.is_boundary(2 * k as usize, &model.beta_power(0, k)))
        .ok_or(SpecseqError::PresentationMismatch("β1 is not nilpotent below the truncation".into()))?;
    let survivors: Vec<usize> = transgressions.iter().enumerate().filter(|(_, t)| t.vanishes).map(|(i, _)| i).collect();

    let mut generators: Vec<RingGenerator> = survivors
        .iter()
        .map(|&i| RingGenerator { name: format!("z{}", 2 * i + 1), degree: KoszulModel::exterior_degree(i) })
        .collect();
    generators.push(RingGenerator { name: "β".into(), degree: 2 });
    let mut relations: Vec<String> = survivors.iter().map(|&i| format!("z{}^2", 2 * i + 1)).collect();
    relations.push(format!("β^{beta_order}"));
    let presentation = format!(
        "F{p}[{}]/({})",
        generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", "),
        relations.join(", ")
    );

    let mut expected = PoincareSeries::new((0..beta_order as usize * 2 - 1).map(|d| u64::from(d % 2 == 0)).collect());
    for &i in &survivors {
        let mut c = vec![0; KoszulModel::exterior_degree(i) + 1];
        c[0] = 1;
        c[KoszulModel::exterior_degree(i)] = 1;
        expected = expected.mul(&PoincareSeries::new(c));
    }
    if expected != series {
        return Err(SpecseqError::PresentationMismatch(format!("presented series {expected} but homology gives {series}")));
    }

    let mut ring_checks = Vec::new();
    let beta_top = model.beta_power(0, beta_order - 1);
    let beta_deg = 2 * (beta_order as usize - 1);
    ring_checks.push((format!("β^{} ≠ 0", beta_order - 1), !model.is_boundary(beta_deg, &beta_top)));
    ring_checks.push((format!("β^{beta_order} = 0"), model.is_boundary(2 * beta_order as usize, &model.beta_power(0, beta_order))));
    let mut top = (beta_deg, beta_top.clone());
    for &i in &survivors {
        let n = KoszulModel::exterior_degree(i);
        let Some(z) = model.lift_exterior(i) else {
            return Err(SpecseqError::PresentationMismatch(format!("z{} has no cycle lift", n)));
        };
        ring_checks.push((format!("z{n} lifts to a cycle"), model.is_cycle(n, &z)));
        let sq = model.multiply(n, &z, n, &z);
        ring_checks.push((format!("z{n}^2 = 0"), sq.is_empty() || model.is_boundary(2 * n, &sq)));
        let prod = model.multiply(top.0, &top.1, n, &z);
        top = (top.0 + n, prod);
    }
    let top_nonzero = !top.1.is_empty() && !model.is_boundary(top.0, &top.1);
    ring_checks.push((format!("top class in degree {} ≠ 0", top.0), top_nonzero));
    if let Some((name, _)) = ring_checks.iter().find(|(_, ok)| !ok) {
        return Err(SpecseqError::PresentationMismatch(format!("ring check failed: {name}")));
    }

    Ok(U3T2Cohomology {
        prime: p,
        chern: chern.clone(),
        transgressions,
        generators,
        relations,
        presentation,
        total_dimension: dims.iter().sum(),
        top_degree: series.degree().unwrap_or(0),
        series,
        homology_dims: dims,
        ring_checks,
    })
}
