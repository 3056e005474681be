//! Cardinality-ascending search over vertex subsets of an arbitrary connected
//! graph, driven by a table of per-vertex `Δ_z` values for every pair.

use super::search::{Aborted, Budget, Ticker};
use crate::graph::{DistanceOracle, GeneralGraph};
use crate::par;

/// `Δ_z(x, y)` for every pair (rows) and vertex `z` (columns).
pub(crate) struct DeltaTable {
    pub order: usize,
    pub pairs: Vec<(usize, usize)>,
    values: Vec<u8>,
    /// `suffix_max[p * (order + 1) + z]`: largest `Δ_w` over `w >= z`.
    suffix_max: Vec<u8>,
}

impl DeltaTable {
    pub fn new(g: &GeneralGraph) -> Self {
        let order = g.order();
        let pairs: Vec<(usize, usize)> =
            (0..order).flat_map(|x| (x + 1..order).map(move |y| (x, y))).collect();
        let mut values = Vec::with_capacity(pairs.len() * order);
        let mut suffix_max = Vec::with_capacity(pairs.len() * (order + 1));
        for &(x, y) in &pairs {
            let row: Vec<u8> =
                (0..order).map(|z| g.dist0(x, z).abs_diff(g.dist0(y, z)) as u8).collect();
            let mut suffix = vec![0u8; order + 1];
            for z in (0..order).rev() {
                suffix[z] = suffix[z + 1].max(row[z]);
            }
            values.extend(row);
            suffix_max.extend(suffix);
        }
        Self { order, pairs, values, suffix_max }
    }

    #[inline]
    pub fn value(&self, p: usize, z: usize) -> u32 {
        self.values[p * self.order + z] as u32
    }

    #[inline]
    fn best_from(&self, p: usize, z: usize) -> u32 {
        self.suffix_max[p * (self.order + 1) + z] as u32
    }
}

pub(crate) struct GeneralLevel<'a> {
    pub table: &'a DeltaTable,
    pub k: u32,
    pub size: usize,
    pub prune: bool,
    pub parallel: bool,
    pub budget: &'a Budget,
}

impl GeneralLevel<'_> {
    fn dfs(
        &self,
        chosen: &mut Vec<usize>,
        sums: &mut [u32],
        next: usize,
        tick: &mut Ticker,
    ) -> Result<bool, Aborted> {
        let t = self.table;
        let left = self.size - chosen.len();
        if left == 0 {
            return Ok(sums.iter().all(|&s| s >= self.k));
        }
        if self.prune {
            let hopeless = sums
                .iter()
                .enumerate()
                .any(|(p, &s)| s + left as u32 * t.best_from(p, next) < self.k);
            if hopeless {
                return Ok(false);
            }
        }
        for z in next..=t.order - left {
            tick.step()?;
            chosen.push(z);
            for (p, s) in sums.iter_mut().enumerate() {
                *s += t.value(p, z);
            }
            let found = self.dfs(chosen, sums, z + 1, tick)?;
            if found {
                return Ok(true);
            }
            for (p, s) in sums.iter_mut().enumerate() {
                *s -= t.value(p, z);
            }
            chosen.pop();
        }
        Ok(false)
    }

    /// Lexicographically least `size`-subset (0-based ids) that is weak
    /// k-resolving.
    pub fn run(&self) -> Result<Option<Vec<usize>>, Aborted> {
        let order = self.table.order;
        if self.size > order {
            return Ok(None);
        }
        if self.size == 0 {
            let ok = self.table.pairs.is_empty() || self.k == 0;
            return Ok(ok.then(Vec::new));
        }
        let firsts: Vec<usize> = (0..=order - self.size).collect();
        let outcome = par::find_map_first(&firsts, self.parallel, |&first| {
            let mut chosen = vec![first];
            let mut sums: Vec<u32> =
                (0..self.table.pairs.len()).map(|p| self.table.value(p, first)).collect();
            let mut tick = Ticker::new(self.budget);
            let found = self.dfs(&mut chosen, &mut sums, first + 1, &mut tick);
            let flushed = tick.finish();
            match (found, flushed) {
                (Err(e), _) | (Ok(false), Err(e)) => Some(Err(e)),
                (Ok(true), _) => Some(Ok(chosen)),
                (Ok(false), Ok(())) => None,
            }
        });
        outcome.transpose()
    }
}
