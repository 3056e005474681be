//! Exhaustive search of one cardinality level of `K_n x K_n`.
//!
//! Rows of the member matrix are placed one at a time; after each row every
//! fully known row pair is checked against its same-column pairs (and, in
//! complement mode, its hole bound), so a violated pair prunes the whole
//! subtree. Complete matrices get the full pair check.
//!
//! Column `j` (1-based) of a row lives in bit `n − j`, so descending masks
//! enumerate sets in lexicographic order of their sorted vertex lists.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::bounds::{pair_hole_limit, Parity};
use super::canon::ColumnPerms;
use crate::graph::Vertex;
use crate::par;
use crate::vertex_set::VertexSet;

const FLUSH_EVERY: u64 = 1 << 16;

/// Shared node/time budget. Workers count locally and publish every 2^16
/// expansions, which is also when limits are checked.
pub(crate) struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Aborted;

impl Budget {
    pub fn new(max_nodes: Option<u64>, deadline: Option<Instant>) -> Self {
        Self { max_nodes, deadline, nodes: AtomicU64::new(0), aborted: AtomicBool::new(false) }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    fn publish(&self, count: u64) -> Result<(), Aborted> {
        let total = self.nodes.fetch_add(count, Ordering::Relaxed) + count;
        let over_nodes = self.max_nodes.is_some_and(|m| total > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if self.aborted() {
            Err(Aborted)
        } else {
            Ok(())
        }
    }
}

pub(crate) struct Ticker<'a> {
    budget: &'a Budget,
    local: u64,
}

impl<'a> Ticker<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Self { budget, local: 0 }
    }

    #[inline]
    pub fn step(&mut self) -> Result<(), Aborted> {
        self.local += 1;
        if self.local == FLUSH_EVERY {
            self.local = 0;
            self.budget.publish(FLUSH_EVERY)?;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), Aborted> {
        self.budget.publish(self.local)
    }
}

pub(crate) struct LevelSearch<'a> {
    pub n: usize,
    pub k: usize,
    /// `|S|`.
    pub weight: usize,
    pub perms: Option<&'a ColumnPerms>,
    /// Row-pair pruning; when off only complete matrices are checked.
    pub prune: bool,
    /// Hole bound for complement search, `(t, parity)`.
    pub hole_bound: Option<(usize, Parity)>,
    pub parallel: bool,
    pub budget: &'a Budget,
}

struct Frame {
    rows: Vec<u32>,
}

impl<'a> LevelSearch<'a> {
    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Same-column pairs between `s` and every placed row.
    #[inline]
    fn compatible(&self, frame: &Frame, s: u32) -> bool {
        let full = self.full();
        let a = s.count_ones() as usize;
        if let Some((t, parity)) = self.hole_bound {
            let holes = !s & full;
            let h = holes.count_ones() as usize;
            for &other in &frame.rows {
                let other_holes = !other & full;
                if h + other_holes.count_ones() as usize > pair_hole_limit(t, parity, holes & other_holes != 0) {
                    return false;
                }
            }
        }
        for &other in &frame.rows {
            let extra = if s | other != full {
                0
            } else if s & other != full {
                1
            } else {
                2
            };
            if a + other.count_ones() as usize + extra < self.k {
                return false;
            }
        }
        true
    }

    fn leaf_resolves(&self, members: &[u32]) -> bool {
        let n = self.n;
        let k = self.k as i64;
        let bit = |row: u32, j: usize| (row >> (n - 1 - j) & 1) as i64;
        let mut cols = [0i64; 32];
        for &m in members {
            for (j, c) in cols.iter_mut().enumerate().take(n) {
                *c += bit(m, j);
            }
        }
        let rows: Vec<i64> = members.iter().map(|m| m.count_ones() as i64).collect();
        if !self.prune {
            // same-column pairs were not checked during descent
            for i in 0..n {
                for i2 in i + 1..n {
                    for j in 0..n {
                        if rows[i] + rows[i2] + bit(members[i], j) + bit(members[i2], j) < k {
                            return false;
                        }
                    }
                }
            }
        }
        for &m in members {
            for j in 0..n {
                for j2 in j + 1..n {
                    if cols[j] + cols[j2] + bit(m, j) + bit(m, j2) < k {
                        return false;
                    }
                }
            }
        }
        for i in 0..n {
            for i2 in i + 1..n {
                let base = rows[i] + rows[i2];
                let (mi, mi2) = (members[i], members[i2]);
                for j in 0..n {
                    for j2 in 0..n {
                        if j == j2 {
                            continue;
                        }
                        let ends = bit(mi, j) + bit(mi2, j2);
                        let corners = bit(mi2, j) + bit(mi, j2);
                        if base + cols[j] + cols[j2] - ends - 2 * corners < k {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn children(&self, frame: &Frame, remaining: usize) -> impl Iterator<Item = u32> + '_ {
        let r = frame.rows.len();
        let left = self.n - r;
        let upper = match (self.perms, frame.rows.last()) {
            (Some(_), Some(&last)) => last,
            _ => self.full(),
        };
        let n = self.n;
        (0..=upper).rev().filter(move |m| {
            let pc = m.count_ones() as usize;
            pc <= remaining && remaining - pc <= (left - 1) * n
        })
    }

    /// Pushes `mask` if it passes every prefix test.
    fn try_push(&self, frame: &mut Frame, mask: u32) -> bool {
        if self.prune && !self.compatible(frame, mask) {
            return false;
        }
        frame.rows.push(mask);
        if let Some(perms) = self.perms {
            if !perms.is_canonical_prefix(&frame.rows) {
                frame.rows.pop();
                return false;
            }
        }
        true
    }

    fn pop(frame: &mut Frame) {
        frame.rows.pop();
    }

    fn accept_leaf(&self, frame: &Frame) -> bool {
        if !self.leaf_resolves(&frame.rows) {
            return false;
        }
        match self.perms {
            Some(perms) => perms.is_orbit_representative(&frame.rows),
            None => true,
        }
    }

    fn dfs(&self, frame: &mut Frame, remaining: usize, tick: &mut Ticker) -> Result<bool, Aborted> {
        if frame.rows.len() == self.n {
            return Ok(remaining == 0 && self.accept_leaf(frame));
        }
        let candidates: Vec<u32> = self.children(frame, remaining).collect();
        for mask in candidates {
            tick.step()?;
            if !self.try_push(frame, mask) {
                continue;
            }
            if self.dfs(frame, remaining - mask.count_ones() as usize, tick)? {
                return Ok(true);
            }
            Self::pop(frame);
        }
        Ok(false)
    }

    /// All valid prefixes of the given depth, in enumeration order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u32>> {
        fn go(s: &LevelSearch, frame: &mut Frame, remaining: usize, depth: usize, out: &mut Vec<Vec<u32>>) {
            if frame.rows.len() == depth || frame.rows.len() == s.n {
                out.push(frame.rows.clone());
                return;
            }
            let candidates: Vec<u32> = s.children(frame, remaining).collect();
            for mask in candidates {
                if s.try_push(frame, mask) {
                    go(s, frame, remaining - mask.count_ones() as usize, depth, out);
                    LevelSearch::pop(frame);
                }
            }
        }
        let mut out = Vec::new();
        let mut frame = Frame { rows: Vec::new() };
        go(self, &mut frame, self.weight, depth, &mut out);
        out
    }

    /// First matrix of this weight (in enumeration order) whose member set is
    /// weak k-resolving, as member row masks.
    pub fn run(&self) -> Result<Option<Vec<u32>>, Aborted> {
        if self.weight > self.n * self.n {
            return Ok(None);
        }
        let depth = self.n.min(2);
        let starts = self.prefixes(depth);
        let outcome = par::find_map_first(&starts, self.parallel, |prefix| {
            let mut frame = Frame { rows: prefix.clone() };
            let used: usize = prefix.iter().map(|m| m.count_ones() as usize).sum();
            let mut tick = Ticker::new(self.budget);
            let found = self.dfs(&mut frame, self.weight - used, &mut tick);
            let flushed = tick.finish();
            match (found, flushed) {
                (Err(e), _) => Some(Err(e)),
                (Ok(true), _) => Some(Ok(frame.rows)),
                (Ok(false), Err(e)) => Some(Err(e)),
                (Ok(false), Ok(())) => None,
            }
        });
        outcome.transpose()
    }
}

/// Member row masks to a vertex set.
pub(crate) fn rows_to_set(n: usize, members: &[u32]) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for (r, &m) in members.iter().enumerate() {
        for j in 1..=n {
            if m >> (n - j) & 1 == 1 {
                s.insert(Vertex::new(r + 1, j)).expect("in range");
            }
        }
    }
    s
}
