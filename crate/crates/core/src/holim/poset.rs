use serde::{Deserialize, Serialize};

/// The poset `S(n)` of nonempty subsets of `{0, …, n}`.
///
/// Objects are ordered by size, then lexicographically, so that for `n = 2` the indices are
/// `i0 = (0), i1 = (1), i2 = (2), i3 = (0,1), i4 = (0,2), i5 = (1,2), i6 = (0,1,2)`.
/// An arrow `j → l` exists when `objects[j] ⊊ objects[l]`; a diagram assigns it a map `H(j) → H(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSn {
    pub n: usize,
    pub objects: Vec<Vec<usize>>,
    /// Nondegenerate 2-chains `(j, l)`, ordered by `(l, j)`.
    pub arrows: Vec<(usize, usize)>,
    /// Nondegenerate 3-chains `(a, b, c)`, ordered by `(b, a, c)`.
    pub chains3: Vec<(usize, usize, usize)>,
}

pub fn poset(n: usize) -> PosetSn {
    let mut objects: Vec<Vec<usize>> = (1u64..1 << (n + 1))
        .map(|m| (0..=n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    objects.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let k = objects.len();
    let below = |a: usize, b: usize| a != b && objects[a].iter().all(|x| objects[b].contains(x));
    let mut arrows: Vec<(usize, usize)> =
        (0..k).flat_map(|j| (0..k).map(move |l| (j, l))).filter(|&(j, l)| below(j, l)).collect();
    arrows.sort_by_key(|&(j, l)| (l, j));
    let mut chains3: Vec<(usize, usize, usize)> = arrows
        .iter()
        .flat_map(|&(a, b)| arrows.iter().filter(move |&&(b2, _)| b2 == b).map(move |&(_, c)| (a, b, c)))
        .collect();
    chains3.sort_by_key(|&(a, b, c)| (b, a, c));
    PosetSn { n, objects, arrows, chains3 }
}

impl PosetSn {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.objects.iter().position(|o| *o == s)
    }

    pub fn arrow_index(&self, j: usize, l: usize) -> Option<usize> {
        self.arrows.iter().position(|&a| a == (j, l))
    }

    pub fn is_below(&self, j: usize, l: usize) -> bool {
        self.arrow_index(j, l).is_some()
    }

    /// Display label of an object, e.g. `(0,1)`.
    pub fn label(&self, i: usize) -> String {
        let inner: Vec<String> = self.objects[i].iter().map(|x| x.to_string()).collect();
        format!("({})", inner.join(","))
    }
}
