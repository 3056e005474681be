//! Exact `wdim_k` by cardinality-ascending search.
//!
//! Every level is exhausted before the next one is opened, so the reported
//! value is optimal whenever the report says `exact`. Sets are enumerated in
//! lexicographic order of their sorted vertex lists and the first hit at
//! the optimal level is returned, which makes the basis the lexicographically
//! least optimum. Under symmetry reduction the optimum is found on orbit
//! representatives and the basis is then recovered by one unreduced pass over
//! the optimal level.

pub mod bounds;
pub(crate) mod canon;
pub(crate) mod general;
pub(crate) mod search;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::constructions::{construct, is_covered};
use crate::delta::{compute_kappa, first_below, min_delta_raw, product_kappa, DeltaWitness};
use crate::error::{Error, Result};
use crate::graph::{DistanceOracle, GeneralGraph, ProductGraph, Vertex};
use crate::vertex_set::VertexSet;

pub use bounds::{
    band_parameter, feasibility_lower_bound, greedy_upper_bound, hole_bound_prune, pair_hole_limit,
    HoleState, Parity,
};
pub use canon::MAX_SYMMETRIC_N;

use canon::ColumnPerms;
use general::{DeltaTable, GeneralLevel};
use search::{rows_to_set, Aborted, Budget, LevelSearch};

/// Largest vertex count for which every subset is enumerated.
pub const MAX_FULL_ENUMERATION: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    #[serde(rename = "SUBSET-ASCENDING")]
    SubsetAscending,
    #[serde(rename = "COMPLEMENT-ASCENDING")]
    ComplementAscending,
    #[serde(rename = "FULL-ENUMERATION")]
    FullEnumeration,
}

impl SearchMode {
    pub fn label(self) -> &'static str {
        match self {
            Self::SubsetAscending => "SUBSET-ASCENDING",
            Self::ComplementAscending => "COMPLEMENT-ASCENDING",
            Self::FullEnumeration => "FULL-ENUMERATION",
        }
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "SUBSET-ASCENDING" | "SUBSET" => Ok(Self::SubsetAscending),
            "COMPLEMENT-ASCENDING" | "COMPLEMENT" => Ok(Self::ComplementAscending),
            "FULL-ENUMERATION" | "FULL" => Ok(Self::FullEnumeration),
            _ => Err(Error::InvalidParameter(format!("unknown search mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub budget_nodes: Option<u64>,
    pub budget_time: Option<Duration>,
    /// `None` picks a mode from the bounds.
    pub mode: Option<SearchMode>,
    /// Orbit reduction under row/column permutations and transpose
    /// (product graphs with `n <= MAX_SYMMETRIC_N`).
    pub symmetry: bool,
    /// Layer-count and hole-bound pruning, and the feasibility lower bound
    /// as starting level.
    pub pruning: bool,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            budget_nodes: None,
            budget_time: None,
            mode: None,
            symmetry: true,
            pruning: true,
            parallel: crate::par::available(),
        }
    }
}

impl SolveOptions {
    pub fn sequential() -> Self {
        Self { parallel: false, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.budget_nodes == Some(0) || self.budget_time == Some(Duration::ZERO) {
            return Err(Error::InvalidParameter("budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport<V = Vertex> {
    /// Side length, or the order of a general graph.
    pub n: usize,
    pub k: usize,
    /// The optimum when `exact`, otherwise the best upper bound found.
    pub value: usize,
    pub exact: bool,
    /// No weak k-resolving set has fewer vertices.
    pub lower_bound: usize,
    pub basis: Vec<V>,
    pub witness: DeltaWitness<V>,
    pub nodes_explored: u64,
    pub wall_time_ms: u64,
    pub mode: SearchMode,
}

impl<V: Serialize> SolveReport<V> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Graphs the solver knows how to search.
pub trait Solvable: DistanceOracle + Sized {
    fn solve_with(&self, k: usize, opts: &SolveOptions) -> Result<SolveReport<Self::Vertex>>;
}

/// Minimum weak k-resolving set of `oracle`.
pub fn solve_wdim<O: Solvable>(oracle: &O, k: usize, opts: &SolveOptions) -> Result<SolveReport<O::Vertex>> {
    oracle.solve_with(k, opts)
}

fn gate(k: usize, kappa: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > kappa {
        return Err(Error::OutOfRange { k, kappa });
    }
    Ok(())
}

fn certify<O: DistanceOracle>(oracle: &O, basis: &[O::Vertex], k: usize) -> DeltaWitness<O::Vertex> {
    let w = min_delta_raw(oracle, basis).expect("basis vertices belong to the graph");
    assert!(w.value as usize >= k, "certificate failed: min delta {} < {k}", w.value);
    w
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis().min(u64::MAX as u128) as u64
}

/// Outcome of a level-by-level search before certification.
struct Found<S> {
    value: usize,
    exact: bool,
    lower_bound: usize,
    basis: S,
}

impl Solvable for ProductGraph {
    fn solve_with(&self, k: usize, opts: &SolveOptions) -> Result<SolveReport<Vertex>> {
        opts.validate()?;
        gate(k, product_kappa(self.n()))?;
        let start = Instant::now();
        let budget = Budget::new(opts.budget_nodes, opts.budget_time.map(|d| start + d));
        let n = self.n();
        let cells = n * n;

        let mode = match opts.mode {
            Some(m) => m,
            None => ProductSearch::auto_mode(self, k)?,
        };
        let found = match mode {
            SearchMode::FullEnumeration => {
                if cells > MAX_FULL_ENUMERATION {
                    return Err(Error::TooLarge(format!(
                        "full enumeration needs at most {MAX_FULL_ENUMERATION} vertices, K_{n} x K_{n} has {cells}"
                    )));
                }
                full_enumeration_product(self, k as u32, &budget)?
            }
            _ => ProductSearch::new(self, k, opts, &budget)?.run(mode)?,
        };
        let basis = found.basis.to_vec();
        let witness = certify(self, &basis, k);
        Ok(SolveReport {
            n,
            k,
            value: found.value,
            exact: found.exact,
            lower_bound: found.lower_bound,
            basis,
            witness,
            nodes_explored: budget.nodes(),
            wall_time_ms: elapsed_ms(start),
            mode,
        })
    }
}

struct ProductSearch<'a> {
    n: usize,
    k: usize,
    opts: &'a SolveOptions,
    budget: &'a Budget,
    perms: Option<ColumnPerms>,
    lower: usize,
    upper: VertexSet,
}

impl<'a> ProductSearch<'a> {
    /// Smallest verified set among the greedy pass and a covering
    /// construction.
    fn best_known(g: &ProductGraph, k: usize) -> Result<VertexSet> {
        let mut best = greedy_upper_bound(g, k)?;
        if is_covered(g.n(), k) {
            let c = construct(g.n(), k)?;
            if c.set.len() < best.len() && first_below(g, &c.set, k as u32)?.is_none() {
                best = c.set;
            }
        }
        Ok(best)
    }

    fn auto_mode(g: &ProductGraph, k: usize) -> Result<SearchMode> {
        let cells = g.n() * g.n();
        let upper = Self::best_known(g, k)?.len();
        Ok(if cells - upper < upper {
            SearchMode::ComplementAscending
        } else {
            SearchMode::SubsetAscending
        })
    }

    fn new(g: &ProductGraph, k: usize, opts: &'a SolveOptions, budget: &'a Budget) -> Result<Self> {
        let n = g.n();
        let perms = (opts.symmetry && n <= MAX_SYMMETRIC_N).then(|| ColumnPerms::new(n));
        let lower = if opts.pruning { feasibility_lower_bound(n, k) } else { 1 };
        let upper = Self::best_known(g, k)?;
        Ok(Self { n, k, opts, budget, perms, lower, upper })
    }

    fn level(&self, size: usize, complement: bool, reduced: bool) -> std::result::Result<Option<VertexSet>, Aborted> {
        let hole_bound = if complement && self.opts.pruning { band_parameter(self.n, self.k) } else { None };
        let search = LevelSearch {
            n: self.n,
            k: self.k,
            weight: size,
            perms: if reduced { self.perms.as_ref() } else { None },
            prune: self.opts.pruning,
            hole_bound,
            parallel: self.opts.parallel,
            budget: self.budget,
        };
        Ok(search.run()?.map(|rows| rows_to_set(self.n, &rows)))
    }

    fn run(self, mode: SearchMode) -> Result<Found<VertexSet>> {
        let complement = mode == SearchMode::ComplementAscending;
        let mut best = self.upper.clone();
        let mut lower = self.lower;
        // `best` comes from the unreduced search at its own level
        let mut lex_least = false;
        let outcome: std::result::Result<(), Aborted> = (|| {
            if complement {
                while best.len() > lower {
                    match self.level(best.len() - 1, true, true)? {
                        Some(s) => {
                            lex_least = self.perms.is_none();
                            best = s;
                        }
                        None => lower = best.len(),
                    }
                }
            } else {
                while lower < best.len() {
                    if let Some(s) = self.level(lower, false, true)? {
                        lex_least = self.perms.is_none();
                        best = s;
                    } else {
                        lower += 1;
                    }
                }
            }
            Ok(())
        })();
        let exact = outcome.is_ok();
        if exact && !lex_least {
            if let Ok(Some(s)) = self.level(best.len(), complement, false) {
                best = s;
            }
        }
        Ok(Found { value: best.len(), exact, lower_bound: lower, basis: best })
    }
}

fn product_subset(g: &ProductGraph, mask: u64) -> VertexSet {
    let vs = (0..g.vertex_count()).filter(|b| mask >> b & 1 == 1).map(|b| g.vertex(b));
    VertexSet::from_vertices(g.n(), vs).expect("indices in range")
}

/// Every subset, checked one by one through the delta engine.
fn full_enumeration_product(g: &ProductGraph, k: u32, budget: &Budget) -> Result<Found<VertexSet>> {
    let cells = g.vertex_count();
    let mut best: Option<VertexSet> = None;
    let mut tick = search::Ticker::new(budget);
    for mask in 0u64..1 << cells {
        let size = mask.count_ones() as usize;
        if best.as_ref().is_some_and(|b| size > b.len()) {
            continue;
        }
        if tick.step().is_err() {
            break;
        }
        let s = product_subset(g, mask);
        if first_below(g, &s, k)?.is_some() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => size < b.len() || s.to_vec() < b.to_vec(),
        };
        if better {
            best = Some(s);
        }
    }
    let exact = tick.finish().is_ok() && !budget.aborted();
    let basis = best.unwrap_or_else(|| VertexSet::full(g.n()));
    let lower = if exact { basis.len() } else { 1 };
    Ok(Found { value: basis.len(), exact, lower_bound: lower, basis })
}

impl Solvable for GeneralGraph {
    fn solve_with(&self, k: usize, opts: &SolveOptions) -> Result<SolveReport<usize>> {
        opts.validate()?;
        if self.order() < 2 {
            return Err(Error::DegenerateGraph);
        }
        let kappa = compute_kappa(self)? as usize;
        gate(k, kappa)?;
        let start = Instant::now();
        let budget = Budget::new(opts.budget_nodes, opts.budget_time.map(|d| start + d));
        let table = DeltaTable::new(self);
        let order = self.order();
        let mode = opts.mode.unwrap_or(SearchMode::SubsetAscending);
        let found = match mode {
            SearchMode::FullEnumeration => {
                if order > MAX_FULL_ENUMERATION {
                    return Err(Error::TooLarge(format!(
                        "full enumeration needs at most {MAX_FULL_ENUMERATION} vertices, graph has {order}"
                    )));
                }
                full_enumeration_general(&table, k as u32, &budget)
            }
            _ => general_levels(&table, k as u32, mode == SearchMode::ComplementAscending, opts, &budget),
        };
        let basis: Vec<usize> = found.basis.iter().map(|z| z + 1).collect();
        let witness = certify(self, &basis, k);
        Ok(SolveReport {
            n: order,
            k,
            value: found.value,
            exact: found.exact,
            lower_bound: found.lower_bound,
            basis,
            witness,
            nodes_explored: budget.nodes(),
            wall_time_ms: elapsed_ms(start),
            mode,
        })
    }
}

fn general_levels(table: &DeltaTable, k: u32, complement: bool, opts: &SolveOptions, budget: &Budget) -> Found<Vec<usize>> {
    let order = table.order;
    let level = |size: usize| {
        GeneralLevel { table, k, size, prune: opts.pruning, parallel: opts.parallel, budget }.run()
    };
    let mut best: Vec<usize> = (0..order).collect();
    let mut lower = 1;
    let outcome: std::result::Result<(), Aborted> = (|| {
        if complement {
            while best.len() > lower {
                match level(best.len() - 1)? {
                    Some(s) => best = s,
                    None => lower = best.len(),
                }
            }
        } else {
            while lower < best.len() {
                match level(lower)? {
                    Some(s) => best = s,
                    None => lower += 1,
                }
            }
        }
        Ok(())
    })();
    Found { value: best.len(), exact: outcome.is_ok(), lower_bound: lower, basis: best }
}

fn full_enumeration_general(table: &DeltaTable, k: u32, budget: &Budget) -> Found<Vec<usize>> {
    let order = table.order;
    let mut best: Vec<usize> = (0..order).collect();
    let mut tick = search::Ticker::new(budget);
    let mut complete = true;
    for mask in 0u64..1 << order {
        if tick.step().is_err() {
            complete = false;
            break;
        }
        let members: Vec<usize> = (0..order).filter(|z| mask >> z & 1 == 1).collect();
        if members.len() > best.len() {
            continue;
        }
        let resolving = (0..table.pairs.len()).all(|p| members.iter().map(|&z| table.value(p, z)).sum::<u32>() >= k);
        if resolving && (members.len() < best.len() || members < best) {
            best = members;
        }
    }
    let exact = complete && tick.finish().is_ok();
    let lower = if exact { best.len() } else { 1 };
    Found { value: best.len(), exact, lower_bound: lower, basis: best }
}
