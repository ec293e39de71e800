use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SpecseqError;
use crate::exactla::AbelianGroup;

/// One page of a first-quadrant cohomological spectral sequence, p-locally.
///
/// Entries are stored for total degree up to `truncation + 1`; `period` records a horizontal
/// period valid for columns `c ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "PageData", into = "PageData")]
pub struct BigradedPage {
    pub prime: u64,
    pub page_index: usize,
    pub fiber_top: usize,
    pub period: Option<usize>,
    pub truncation: usize,
    entries: BTreeMap<(usize, usize), AbelianGroup>,
}

/// Serialized entry of a page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub column: usize,
    pub row: usize,
    pub group: AbelianGroup,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PageData {
    prime: u64,
    page_index: usize,
    fiber_top: usize,
    period: Option<usize>,
    truncation: usize,
    entries: Vec<PageEntry>,
}

impl From<PageData> for BigradedPage {
    fn from(d: PageData) -> Self {
        let mut page = BigradedPage::new(d.prime, d.page_index, d.fiber_top, d.period, d.truncation);
        for e in d.entries {
            page.entries.insert((e.column, e.row), e.group);
        }
        page
    }
}

impl From<BigradedPage> for PageData {
    fn from(p: BigradedPage) -> Self {
        let entries = p.entries().map(|((column, row), group)| PageEntry { column, row, group: group.clone() }).collect();
        PageData {
            prime: p.prime,
            page_index: p.page_index,
            fiber_top: p.fiber_top,
            period: p.period,
            truncation: p.truncation,
            entries,
        }
    }
}

impl BigradedPage {
    pub fn new(prime: u64, page_index: usize, fiber_top: usize, period: Option<usize>, truncation: usize) -> Self {
        BigradedPage { prime, page_index, fiber_top, period, truncation, entries: BTreeMap::new() }
    }

    /// Largest column held explicitly in row `q`.
    pub fn last_column(&self, q: usize) -> Option<usize> {
        (self.truncation + 1).checked_sub(q)
    }

    pub fn in_window(&self, c: usize, q: usize) -> bool {
        q <= self.fiber_top && c + q <= self.truncation + 1
    }

    pub fn entry(&self, c: usize, q: usize) -> AbelianGroup {
        self.entries.get(&(c, q)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, c: usize, q: usize, g: AbelianGroup) -> Result<(), SpecseqError> {
        if q > self.fiber_top {
            return Err(SpecseqError::OutsidePage { column: c, row: q });
        }
        if !self.in_window(c, q) {
            return Ok(());
        }
        if g.is_trivial() {
            self.entries.remove(&(c, q));
        } else {
            self.entries.insert((c, q), g);
        }
        Ok(())
    }

    /// Nonzero entries in (column, row) order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &AbelianGroup)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn free_rank(&self, c: usize, q: usize) -> usize {
        self.entries.get(&(c, q)).map_or(0, |g| g.free_rank)
    }

    pub fn torsion_rank(&self, c: usize, q: usize) -> usize {
        self.entries.get(&(c, q)).map_or(0, |g| g.p_rank(self.prime))
    }

    /// Every torsion summand has order exactly p.
    pub fn check_elementary(&self) -> Result<(), SpecseqError> {
        for ((c, q), g) in self.entries() {
            if !g.is_elementary(self.prime) || g.torsion.len() != g.p_rank(self.prime) {
                return Err(SpecseqError::NotElementary { column: c, row: q, group: g.to_string() });
            }
        }
        Ok(())
    }

    /// Entries on the anti-diagonal `c + q = n`.
    pub fn anti_diagonal(&self, n: usize) -> Vec<((usize, usize), &AbelianGroup)> {
        self.entries().filter(|((c, q), _)| c + q == n).collect()
    }

    pub fn vanishes_in_degree(&self, n: usize) -> bool {
        self.anti_diagonal(n).is_empty()
    }

    /// Vanishing in every total degree `D < n ≤ truncation`.
    pub fn vanishes_above(&self, d: usize) -> bool {
        (d + 1..=self.truncation).all(|n| self.vanishes_in_degree(n))
    }

    /// Alternating sum of free ranks over total degrees `≤ n`.
    pub fn euler_window(&self, n: usize) -> i64 {
        self.alternating(n, |g| g.free_rank)
    }

    /// Alternating sum of p-torsion ranks over total degrees `≤ n`.
    pub fn torsion_euler_window(&self, n: usize) -> i64 {
        let p = self.prime;
        self.alternating(n, |g| g.p_rank(p))
    }

    fn alternating(&self, n: usize, f: impl Fn(&AbelianGroup) -> usize) -> i64 {
        self.entries()
            .filter(|((c, q), _)| c + q <= n)
            .map(|((c, q), g)| if (c + q) % 2 == 0 { f(g) as i64 } else { -(f(g) as i64) })
            .sum()
    }

    /// True if every stored column `c ≥ 1` agrees with column `c - period` (when that is `≥ 1`).
    pub fn is_periodic(&self) -> bool {
        let Some(per) = self.period else { return true };
        for q in 0..=self.fiber_top {
            let Some(last) = self.last_column(q) else { continue };
            for c in (1 + per)..=last {
                if self.entry(c, q) != self.entry(c - per, q) {
                    return false;
                }
            }
        }
        true
    }

    /// Residue class used to share unknowns across periodic columns; column 0 is its own class.
    pub fn column_class(&self, c: usize) -> usize {
        match (c, self.period) {
            (0, _) => 0,
            (c, Some(p)) => (c - 1) % p + 1,
            (c, None) => c,
        }
    }
}

impl fmt::Display for BigradedPage {
    /// Chart with rows from the top and columns up to 12.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.truncation.min(12);
        writeln!(f, "E_{} page, p = {}", self.page_index, self.prime)?;
        for q in (0..=self.fiber_top).rev() {
            let cells: Vec<String> = (0..=last)
                .map(|c| {
                    let g = self.entry(c, q);
                    if g.is_trivial() {
                        "0".to_string()
                    } else {
                        g.to_string()
                    }
                })
                .collect();
            if cells.iter().all(|s| s == "0") {
                continue;
            }
            writeln!(f, "{q:>3} | {}", cells.join("  "))?;
        }
        write!(f, "    +{}", (0..=last).map(|c| format!(" {c}")).collect::<String>())
    }
}
