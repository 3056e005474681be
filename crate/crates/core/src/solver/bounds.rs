//! Necessary conditions used to start and prune the search.

use crate::delta::first_below;
use crate::error::Result;
use crate::graph::ProductGraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `k = 2n − 2t`
    Even,
    /// `k = 2n − 2t − 1`
    Odd,
}

/// `(t, parity)` with `k = 2n − 2t` or `k = 2n − 2t − 1` and `t >= 1`.
pub fn band_parameter(n: usize, k: usize) -> Option<(usize, Parity)> {
    if k + 2 > 2 * n || k == 0 {
        return None;
    }
    if k.is_multiple_of(2) {
        Some(((2 * n - k) / 2, Parity::Even))
    } else {
        Some(((2 * n - 1 - k) / 2, Parity::Odd))
    }
}

/// Largest hole count two rows may carry together.
#[inline]
pub fn pair_hole_limit(t: usize, parity: Parity, shared_column: bool) -> usize {
    let base = match parity {
        Parity::Even => 2 * t,
        Parity::Odd => 2 * t + 1,
    };
    base + usize::from(!shared_column)
}

/// Per-row hole counts of a partial complement, plus which row pairs have
/// holes in a common column.
#[derive(Clone, Debug, Default)]
pub struct HoleState {
    pub row_holes: Vec<usize>,
    shared: Vec<Vec<bool>>,
}

impl HoleState {
    pub fn new(row_holes: Vec<usize>) -> Self {
        let r = row_holes.len();
        Self { row_holes, shared: vec![vec![false; r]; r] }
    }

    pub fn set_shared(&mut self, a: usize, b: usize, shared: bool) {
        self.shared[a][b] = shared;
        self.shared[b][a] = shared;
    }

    pub fn shared(&self, a: usize, b: usize) -> bool {
        self.shared[a][b]
    }

    /// From hole masks, one per row.
    pub fn from_hole_rows(rows: &[u32]) -> Self {
        let mut s = Self::new(rows.iter().map(|m| m.count_ones() as usize).collect());
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                s.set_shared(a, b, rows[a] & rows[b] != 0);
            }
        }
        s
    }

    pub fn from_holes(holes: &VertexSet) -> Self {
        let n = holes.n();
        let rows: Vec<u32> = (1..=n)
            .map(|i| (1..=n).filter(|&j| holes.contains((i, j).into())).fold(0, |m, j| m | 1 << (j - 1)))
            .collect();
        Self::from_hole_rows(&rows)
    }
}

/// True when some pair of rows carries more holes than a weak k-resolving
/// complement allows. Never prunes a hole set whose complement resolves.
pub fn hole_bound_prune(state: &HoleState, t: usize, parity: Parity) -> bool {
    let h = &state.row_holes;
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            if h[a] + h[b] > pair_hole_limit(t, parity, state.shared(a, b)) {
                return true;
            }
        }
    }
    false
}

/// Best same-column `Δ_S` two rows with `c` members in total can reach.
fn pair_ceiling(n: usize, c: usize) -> usize {
    if c < n {
        c
    } else if c < 2 * n {
        c + 1
    } else {
        2 * n + 2
    }
}

fn row_count_bound(n: usize, k: usize) -> usize {
    let mut best = n * n;
    for m in 0..=n {
        let partner = (m..=n).find(|&v| pair_ceiling(n, m + v) >= k && pair_ceiling(n, 2 * v) >= k);
        if let Some(v) = partner {
            best = best.min(m + (n - 1) * v);
        }
    }
    best
}

/// A size below which no weak k-resolving set of `K_n x K_n` exists.
///
/// Two rows with `c` members in total always admit a same-column pair with
/// `Δ <= c` when `c < n` and `Δ <= c + 1` when `c < 2n`; the cheapest row
/// profile meeting that for every row pair bounds `|S|`. Separately any hole
/// caps `Δ_S` at `min(2n, 4n − 7)` on some pair.
pub fn feasibility_lower_bound(n: usize, k: usize) -> usize {
    let hole_cap = (2 * n).min((4 * n).saturating_sub(7));
    if k > hole_cap {
        return n * n;
    }
    row_count_bound(n, k)
}

/// Start from `V` and drop vertices in lexicographic order while the set
/// stays weak k-resolving.
pub fn greedy_upper_bound(g: &ProductGraph, k: usize) -> Result<VertexSet> {
    let mut s = VertexSet::full(g.n());
    for v in g.iter_vertices() {
        s.remove(v)?;
        if first_below(g, &s, k as u32)?.is_some() {
            s.insert(v)?;
        }
    }
    Ok(s)
}
