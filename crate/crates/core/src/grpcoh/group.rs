use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Permutation of `{0, …, n−1}` in one-line notation: `self.0[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from 1-based one-line notation, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        let v: Vec<usize> = images.iter().map(|&x| x.checked_sub(1)).collect::<Option<_>>()?;
        let p = Permutation(v);
        p.is_bijection().then_some(p)
    }

    /// The cycle `(c_0 c_1 … c_k)` on `n` points, 0-based.
    pub fn cycle(n: usize, cycle: &[usize]) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        for (i, &c) in cycle.iter().enumerate() {
            v[c] = cycle[(i + 1) % cycle.len()];
        }
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Permutation(v)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn sign(&self) -> i64 {
        let even = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Positions `i` (1-based) with `ω(i) > ω(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.0.len().saturating_sub(1)).filter(|&i| self.0[i] > self.0[i + 1]).map(|i| i + 1).collect()
    }

    /// Sum of descent positions.
    pub fn major_index(&self) -> usize {
        self.descents().iter().sum()
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

/// Finite permutation group with its multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub elements: Vec<Permutation>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub identity: usize,
    pub generators: Vec<usize>,
    /// For each non-identity element, `(generator position, index)` with element = gen ∘ elements[index].
    pub parent: Vec<Option<(usize, usize)>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements && self.generators == other.generators
    }
}

impl FiniteGroup {
    /// Closure of the given generators, enumerated breadth-first from the identity.
    pub fn generated_by(name: &str, degree: usize, gens: &[Permutation]) -> Self {
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut parent = vec![None];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = g.compose(&elements[head]);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push(Some((gi, head)));
                }
            }
            head += 1;
        }
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let inverse = elements.iter().map(|a| index[&a.inverse()]).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        FiniteGroup { name: name.to_string(), degree, elements, table, inverse, identity: 0, generators, parent }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    /// Content hash of the element list and generators (hex SHA-256).
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("degree={};", self.degree));
        for e in &self.elements {
            h.update(format!("{:?};", e.0));
        }
        h.update(format!("gens={:?}", self.generators));
        hex::encode(h.finalize())
    }

    /// Checks closure, associativity of the table against composition, and inverses.
    pub fn verify(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            self.table[a][self.inverse[a]] == self.identity
                && (0..n).all(|b| self.elements[self.table[a][b]] == self.elements[a].compose(&self.elements[b]))
        })
    }
}

/// `Σ_n` generated by the `n`-cycle `(1 2 … n)` and the transposition `(1 2)`.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    assert!((1..=6).contains(&n), "symmetric_group supports 1 <= n <= 6");
    let sigma = Permutation::cycle(n, &(0..n).collect::<Vec<_>>());
    let tau = if n >= 2 { Permutation::cycle(n, &[0, 1]) } else { Permutation::identity(1) };
    FiniteGroup::generated_by(&format!("S{n}"), n, &[sigma, tau])
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let c = Permutation::cycle(n, &(0..n).collect::<Vec<_>>());
    FiniteGroup::generated_by(&format!("C{n}"), n, &[c])
}
