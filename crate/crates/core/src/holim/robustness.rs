use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{higher_limits, HolimError, Limits, PosetDiagram, PosetSn};

/// Supports of the interval modules over `S(n)` that respect `pinned`: convex, connected in the
/// comparability graph, and containing both ends of each pinned arrow or neither.
pub fn interval_pieces(poset: &PosetSn, pinned: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let k = poset.len();
    assert!(k < 32, "interval enumeration is for small posets");
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) {
        let u: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let has = |i: usize| mask >> i & 1 == 1;
        let convex = poset
            .chains3
            .iter()
            .all(|&(a, b, c)| !(has(a) && has(c)) || has(b));
        let pinned_ok = pinned.iter().all(|&(j, l)| has(j) == has(l));
        if convex && pinned_ok && connected(poset, &u) {
            out.push(u);
        }
    }
    out
}

fn connected(poset: &PosetSn, u: &[usize]) -> bool {
    let mut seen = vec![u[0]];
    let mut stack = vec![u[0]];
    while let Some(x) = stack.pop() {
        for &y in u {
            if !seen.contains(&y) && (poset.is_below(x, y) || poset.is_below(y, x)) {
                seen.push(y);
                stack.push(y);
            }
        }
    }
    seen.len() == u.len()
}

/// All multisets of pieces (as sorted piece indices) with the given object dimensions and
/// arrow rank profile, where a piece contributes rank 1 to every arrow inside it.
pub fn interval_decompositions(
    poset: &PosetSn,
    pieces: &[Vec<usize>],
    dims: &[usize],
    profile: &[usize],
) -> Vec<Vec<usize>> {
    let arrow_hits: Vec<Vec<usize>> = pieces
        .iter()
        .map(|u| (0..poset.arrows.len()).filter(|&a| u.contains(&poset.arrows[a].0) && u.contains(&poset.arrows[a].1)).collect())
        .collect();
    let mut out = Vec::new();
    let mut rem = dims.to_vec();
    let mut ranks = vec![0usize; profile.len()];
    let mut cur = Vec::new();
    decompose(pieces, &arrow_hits, profile, &mut rem, &mut ranks, 0, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn decompose(
    pieces: &[Vec<usize>],
    arrow_hits: &[Vec<usize>],
    profile: &[usize],
    rem: &mut Vec<usize>,
    ranks: &mut Vec<usize>,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(j) = rem.iter().position(|&r| r > 0) else {
        if ranks == profile {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
        }
        return;
    };
    for t in start..pieces.len() {
        let u = &pieces[t];
        if !u.contains(&j) || u.iter().any(|&i| rem[i] == 0) {
            continue;
        }
        if arrow_hits[t].iter().any(|&a| ranks[a] + 1 > profile[a]) {
            continue;
        }
        for &i in u {
            rem[i] -= 1;
        }
        for &a in &arrow_hits[t] {
            ranks[a] += 1;
        }
        cur.push(t);
        let next = if rem[j] > 0 { t } else { 0 };
        decompose(pieces, arrow_hits, profile, rem, ranks, next, cur, out);
        cur.pop();
        for &a in &arrow_hits[t] {
            ranks[a] -= 1;
        }
        for &i in u {
            rem[i] += 1;
        }
    }
}

/// Outcome of enumerating every interval decomposition compatible with one degree of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub degree: usize,
    pub dims: Vec<usize>,
    pub profile: Vec<usize>,
    pub decompositions: usize,
    /// `(lim⁰, lim¹)` → number of decompositions producing it.
    #[serde(with = "pairs")]
    pub outcomes: BTreeMap<(usize, usize), usize>,
    pub computed: (usize, usize),
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Outcomes = BTreeMap<(usize, usize), usize>;

    pub fn serialize<S: Serializer>(map: &Outcomes, s: S) -> Result<S::Ok, S::Error> {
        map.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Outcomes, D::Error> {
        Ok(Vec::<((usize, usize), usize)>::deserialize(d)?.into_iter().collect())
    }
}

impl RobustnessReport {
    /// Every compatible decomposition gives the value computed from the bundled maps.
    pub fn is_constant(&self) -> bool {
        self.outcomes.len() == 1 && self.outcomes.contains_key(&self.computed)
    }
}

/// Limits of each piece, computed from its interval module.
pub fn piece_limits(diagram: &PosetDiagram, pieces: &[Vec<usize>]) -> Result<Vec<Limits>, HolimError> {
    pieces
        .iter()
        .map(|u| higher_limits(&PosetDiagram::indicator(diagram.poset.n, diagram.prime, u), 0))
        .collect()
}

pub fn robustness_check(diagram: &PosetDiagram, k: usize) -> Result<RobustnessReport, HolimError> {
    let pieces = interval_pieces(&diagram.poset, &diagram.pinned_arrows());
    let lims = piece_limits(diagram, &pieces)?;
    robustness_with(diagram, k, &pieces, &lims)
}

/// [`robustness_check`] for every degree, sharing the piece enumeration.
pub fn robustness_all(diagram: &PosetDiagram) -> Result<Vec<RobustnessReport>, HolimError> {
    let pieces = interval_pieces(&diagram.poset, &diagram.pinned_arrows());
    let lims = piece_limits(diagram, &pieces)?;
    (0..=diagram.max_degree).map(|k| robustness_with(diagram, k, &pieces, &lims)).collect()
}

fn robustness_with(
    diagram: &PosetDiagram,
    k: usize,
    pieces: &[Vec<usize>],
    lims: &[Limits],
) -> Result<RobustnessReport, HolimError> {
    let dims = diagram.dims_at(k);
    let profile = diagram.rank_profile(k);
    let computed = higher_limits(diagram, k)?;
    let mut outcomes = BTreeMap::new();
    let all = interval_decompositions(&diagram.poset, pieces, &dims, &profile);
    for m in &all {
        let l0 = m.iter().map(|&t| lims[t].lim0).sum::<usize>();
        let l1 = m.iter().map(|&t| lims[t].lim1).sum::<usize>();
        *outcomes.entry((l0, l1)).or_insert(0) += 1;
    }
    Ok(RobustnessReport {
        degree: k,
        dims,
        profile,
        decompositions: all.len(),
        outcomes,
        computed: (computed.lim0, computed.lim1),
    })
}
