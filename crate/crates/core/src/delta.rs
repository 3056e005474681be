//! Discriminating sums `Δ_S(x, y) = Σ_{z∈S} |d(x,z) − d(y,z)|`.
//!
//! Two routes are provided and kept independent: [`delta_set_raw`] sums
//! distances over any [`DistanceOracle`], while [`delta_set_fast`] uses the
//! layer-count identity that holds on `K_n x K_n`:
//!
//! * same column `j`:   `a_i + a_i' + |{x,y} ∩ S|`
//! * same row `i`:      `b_j + b_j' + |{x,y} ∩ S|`
//! * different layers:  `a_i + a_i' + b_j + b_j' − |{x,y} ∩ S| − 2|{z1,z2} ∩ S|`
//!
//! where `z1 = (i', j)` and `z2 = (i, j')` are the other two corners of the
//! rectangle spanned by `x` and `y`.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceOracle, ProductGraph, Vertex};
use crate::par;
use crate::vertex_set::VertexSet;

/// A pair together with its `Δ_S` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaWitness<V = Vertex> {
    pub x: V,
    pub y: V,
    #[serde(rename = "delta")]
    pub value: u32,
}

// Ordered by value first, then by the pair.
impl<V: Ord> Ord for DeltaWitness<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.value, &self.x, &self.y).cmp(&(other.value, &other.x, &other.y))
    }
}

impl<V: Ord> PartialOrd for DeltaWitness<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub fn delta_single<O: DistanceOracle>(
    oracle: &O,
    z: O::Vertex,
    x: O::Vertex,
    y: O::Vertex,
) -> Result<u32> {
    Ok(oracle.distance(x, z)?.abs_diff(oracle.distance(y, z)?))
}

pub fn delta_set_raw<O, I>(oracle: &O, set: I, x: O::Vertex, y: O::Vertex) -> Result<u32>
where
    O: DistanceOracle,
    I: IntoIterator<Item = O::Vertex>,
{
    let mut total = 0;
    for z in set {
        total += delta_single(oracle, z, x, y)?;
    }
    Ok(total)
}

fn check_set(g: &ProductGraph, set: &VertexSet) -> Result<()> {
    if set.n() != g.n() {
        return Err(Error::SizeMismatch { set: set.n(), graph: g.n() });
    }
    Ok(())
}

#[inline]
pub(crate) fn fast_unchecked(set: &VertexSet, x: Vertex, y: Vertex) -> u32 {
    let ends = set.has(x) as usize + set.has(y) as usize;
    let value = if x.j == y.j {
        set.row_count(x.i) + set.row_count(y.i) + ends
    } else if x.i == y.i {
        set.col_count(x.j) + set.col_count(y.j) + ends
    } else {
        let corners = set.has(Vertex::new(y.i, x.j)) as usize + set.has(Vertex::new(x.i, y.j)) as usize;
        set.row_count(x.i) + set.row_count(y.i) + set.col_count(x.j) + set.col_count(y.j)
            - ends
            - 2 * corners
    };
    value as u32
}

pub fn delta_set_fast(g: &ProductGraph, set: &VertexSet, x: Vertex, y: Vertex) -> Result<u32> {
    check_set(g, set)?;
    g.check(x)?;
    g.check(y)?;
    if x == y {
        return Err(Error::DegeneratePair(x.to_string()));
    }
    Ok(fast_unchecked(set, x, y))
}

fn row_minimum(g: &ProductGraph, set: &VertexSet, a: usize) -> Option<DeltaWitness> {
    let x = g.vertex(a);
    let mut best: Option<DeltaWitness> = None;
    for b in a + 1..g.vertex_count() {
        let y = g.vertex(b);
        let value = fast_unchecked(set, x, y);
        if best.is_none_or(|w| value < w.value) {
            best = Some(DeltaWitness { value, x, y });
        }
    }
    best
}

/// Minimum of `Δ_S` over all unordered pairs; ties go to the
/// lexicographically first pair `(x, y)` with `x < y`.
pub fn min_delta(g: &ProductGraph, set: &VertexSet) -> Result<DeltaWitness> {
    min_delta_with(g, set, par::available())
}

pub fn min_delta_with(g: &ProductGraph, set: &VertexSet, parallel: bool) -> Result<DeltaWitness> {
    check_set(g, set)?;
    let starts: Vec<usize> = (0..g.vertex_count() - 1).collect();
    let best = par::min_by_key(&starts, parallel, |&a| row_minimum(g, set, a));
    Ok(best.expect("n >= 3 gives at least one pair"))
}

/// Early-exit scan: the first pair (in lexicographic order) with `Δ_S < k`.
pub fn first_below(g: &ProductGraph, set: &VertexSet, k: u32) -> Result<Option<DeltaWitness>> {
    check_set(g, set)?;
    let total = g.vertex_count();
    for a in 0..total {
        let x = g.vertex(a);
        for b in a + 1..total {
            let y = g.vertex(b);
            let value = fast_unchecked(set, x, y);
            if value < k {
                return Ok(Some(DeltaWitness { value, x, y }));
            }
        }
    }
    Ok(None)
}

/// `Δ_S ≥ k` for every pair, plus the certifying minimum pair.
pub fn is_weak_k_resolving(
    g: &ProductGraph,
    set: &VertexSet,
    k: u32,
) -> Result<(bool, DeltaWitness)> {
    let w = min_delta(g, set)?;
    Ok((w.value >= k, w))
}

/// Minimum of `Δ_S` by raw distance summation, for any oracle.
pub fn min_delta_raw<O: DistanceOracle>(oracle: &O, set: &[O::Vertex]) -> Result<DeltaWitness<O::Vertex>> {
    let vs = oracle.vertices();
    if vs.len() < 2 {
        return Err(Error::DegenerateGraph);
    }
    let mut best: Option<DeltaWitness<O::Vertex>> = None;
    for (a, &x) in vs.iter().enumerate() {
        for &y in &vs[a + 1..] {
            let value = delta_set_raw(oracle, set.iter().copied(), x, y)?;
            if best.as_ref().is_none_or(|w| value < w.value) {
                best = Some(DeltaWitness { value, x, y });
            }
        }
    }
    Ok(best.expect("two or more vertices"))
}

/// `κ(G) = min Δ_V(x, y)` over distinct pairs.
pub fn compute_kappa<O: DistanceOracle>(oracle: &O) -> Result<u32> {
    let all = oracle.vertices();
    Ok(min_delta_raw(oracle, &all)?.value)
}

/// `κ(K_n x K_n)`: 6 for n = 3 and 2n + 2 from n = 4 on.
pub fn product_kappa(n: usize) -> usize {
    if n == 3 {
        6
    } else {
        2 * n + 2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckOutcome {
    pub seed: u64,
    pub trials: usize,
    pub agree: usize,
    pub first_mismatch: Option<CrosscheckMismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckMismatch {
    pub n: usize,
    pub set: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
    pub fast: u32,
    pub raw: u32,
}

/// Seeded random trials of `delta_set_fast` against `delta_set_raw`. Each
/// trial draws `n` from `orders`, a density in `[0, 1]`, a set of that
/// density and a pair `x != y`.
pub fn crosscheck(seed: u64, trials: usize, orders: RangeInclusive<usize>) -> Result<CrosscheckOutcome> {
    if *orders.start() < 3 || orders.is_empty() {
        return Err(Error::InvalidParameter(format!("order range {orders:?} must lie in [3, ..]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    let mut first_mismatch = None;
    for _ in 0..trials {
        let n = rng.gen_range(orders.clone());
        let g = ProductGraph::new(n)?;
        let density: f64 = rng.gen();
        let mut set = VertexSet::empty(n);
        for v in g.iter_vertices() {
            if rng.gen_bool(density) {
                set.insert(v)?;
            }
        }
        let a = rng.gen_range(0..g.vertex_count());
        let mut b = rng.gen_range(0..g.vertex_count() - 1);
        if b >= a {
            b += 1;
        }
        let (x, y) = (g.vertex(a), g.vertex(b));
        let fast = delta_set_fast(&g, &set, x, y)?;
        let raw = delta_set_raw(&g, set.iter(), x, y)?;
        if fast == raw {
            agree += 1;
        } else if first_mismatch.is_none() {
            first_mismatch = Some(CrosscheckMismatch { n, set: set.to_vec(), x, y, fast, raw });
        }
    }
    Ok(CrosscheckOutcome { seed, trials, agree, first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_general_graph;
    use proptest::prelude::*;

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    /// Independent distance rule used only by the tests below.
    fn hand_distance(x: Vertex, y: Vertex) -> u32 {
        match (x.i == y.i, x.j == y.j) {
            (true, true) => 0,
            (false, false) => 1,
            _ => 2,
        }
    }

    fn hand_min_delta(n: usize, members: &[Vertex]) -> u32 {
        let all: Vec<Vertex> = (1..=n).flat_map(|i| (1..=n).map(move |j| v(i, j))).collect();
        let mut best = u32::MAX;
        for (a, &x) in all.iter().enumerate() {
            for &y in &all[a + 1..] {
                let s: u32 = members
                    .iter()
                    .map(|&z| hand_distance(x, z).abs_diff(hand_distance(y, z)))
                    .sum();
                best = best.min(s);
            }
        }
        best
    }

    #[test]
    fn single_vertex_contributions() {
        let g = ProductGraph::new(4).unwrap();
        assert_eq!(delta_single(&g, v(1, 2), v(1, 2), v(1, 3)).unwrap(), 2);
        assert_eq!(delta_single(&g, v(2, 2), v(1, 2), v(2, 1)).unwrap(), 0);
        assert_eq!(delta_single(&g, v(3, 4), v(2, 2), v(2, 2)).unwrap(), 0);
        assert!(delta_single(&g, v(5, 1), v(1, 1), v(2, 2)).is_err());
    }

    #[test]
    fn raw_and_fast_worked_examples() {
        let g = ProductGraph::new(4).unwrap();
        let s1 = VertexSet::from_vertices(4, [(1, 3), (2, 4), (3, 3)]).unwrap();
        assert_eq!(delta_set_raw(&g, s1.iter(), v(1, 1), v(2, 1)).unwrap(), 2);
        assert_eq!(delta_set_fast(&g, &s1, v(1, 1), v(2, 1)).unwrap(), 2);

        let s2 = VertexSet::from_vertices(4, [(1, 1), (2, 2)]).unwrap();
        assert_eq!(delta_set_raw(&g, s2.iter(), v(1, 2), v(2, 1)).unwrap(), 0);
        assert_eq!(delta_set_fast(&g, &s2, v(1, 2), v(2, 1)).unwrap(), 0);

        let empty = VertexSet::empty(4);
        assert_eq!(delta_set_raw(&g, empty.iter(), v(1, 2), v(4, 1)).unwrap(), 0);

        let g5 = ProductGraph::new(5).unwrap();
        let full = VertexSet::full(5);
        assert_eq!(delta_set_fast(&g5, &full, v(2, 3), v(2, 5)).unwrap(), 12);
        assert_eq!(delta_set_fast(&g5, &full, v(1, 3), v(4, 3)).unwrap(), 12);
    }

    #[test]
    fn fast_rejects_bad_input() {
        let g = ProductGraph::new(4).unwrap();
        let s = VertexSet::full(4);
        assert!(matches!(delta_set_fast(&g, &s, v(1, 1), v(1, 1)), Err(Error::DegeneratePair(_))));
        assert!(matches!(
            delta_set_fast(&g, &VertexSet::full(5), v(1, 1), v(1, 2)),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(delta_set_fast(&g, &s, v(1, 1), v(1, 9)).is_err());
    }

    #[test]
    fn min_delta_examples() {
        let g5 = ProductGraph::new(5).unwrap();
        let w = min_delta(&g5, &VertexSet::full(5)).unwrap();
        assert_eq!(w.value, 12);
        assert!(w.x.same_layer(w.y));
        assert_eq!((w.x, w.y), (v(1, 1), v(1, 2)));

        let g4 = ProductGraph::new(4).unwrap();
        assert_eq!(min_delta(&g4, &VertexSet::empty(4)).unwrap().value, 0);

        let diag: Vec<Vertex> = (1..=5).map(|i| v(i, i)).collect();
        let s = VertexSet::complement_of(5, diag).unwrap();
        let expected = hand_min_delta(5, &s.to_vec());
        assert_eq!(expected, 9);
        assert_eq!(min_delta(&g5, &s).unwrap().value, expected);
    }

    #[test]
    fn sequential_and_parallel_minimum_agree() {
        let g = ProductGraph::new(6).unwrap();
        let s = VertexSet::from_vertices(6, [(1, 1), (2, 3), (3, 3), (4, 6), (6, 2)]).unwrap();
        assert_eq!(min_delta_with(&g, &s, false).unwrap(), min_delta_with(&g, &s, true).unwrap());
    }

    #[test]
    fn resolving_examples_top_range() {
        let g = ProductGraph::new(4).unwrap();
        let (ok, _) = is_weak_k_resolving(&g, &VertexSet::full(4), 10).unwrap();
        assert!(ok);
        let minus = VertexSet::complement_of(4, [(1, 1)]).unwrap();
        let (ok, w) = is_weak_k_resolving(&g, &minus, 10).unwrap();
        assert!(!ok);
        assert_eq!(w.value, 8);
        let l11 = g.intersecting_layers(v(1, 1));
        assert!(l11.contains(&w.x) && l11.contains(&w.y));
        assert!(is_weak_k_resolving(&g, &minus, 8).unwrap().0);
        assert_eq!(first_below(&g, &minus, 10).unwrap().map(|w| w.value), Some(8));
        assert_eq!(first_below(&g, &minus, 8).unwrap(), None);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(compute_kappa(&ProductGraph::new(3).unwrap()).unwrap(), 6);
        assert_eq!(compute_kappa(&ProductGraph::new(4).unwrap()).unwrap(), 10);
        let tri = load_general_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(compute_kappa(&tri).unwrap(), 2);
        let k2 = load_general_graph(&[(1, 2)]).unwrap();
        assert_eq!(compute_kappa(&k2).unwrap(), 2);
    }

    #[test]
    fn full_set_delta_by_layer_relation() {
        for n in 3..=12 {
            let g = ProductGraph::new(n).unwrap();
            let all = g.vertices();
            for (a, &x) in all.iter().enumerate() {
                for &y in &all[a + 1..] {
                    let contributing = all
                        .iter()
                        .filter(|&&z| delta_single(&g, z, x, y).unwrap() > 0)
                        .count();
                    let sym_diff = all
                        .iter()
                        .filter(|&&z| z.same_layer(x) != z.same_layer(y))
                        .count();
                    let full = delta_set_raw(&g, all.iter().copied(), x, y).unwrap() as usize;
                    if x.same_layer(y) {
                        assert_eq!(sym_diff, 2 * n - 2);
                        assert_eq!(full, 2 * n + 2);
                    } else {
                        assert_eq!(contributing, 4 * n - 6);
                        assert_eq!(full, 4 * n - 6);
                    }
                }
            }
        }
    }

    #[test]
    fn crosscheck_is_seeded() {
        let a = crosscheck(42, 200, 4..=10).unwrap();
        let b = crosscheck(42, 200, 4..=10).unwrap();
        assert_eq!(a.agree, 200);
        assert_eq!(a.agree, b.agree);
        assert!(crosscheck(1, 1, 2..=4).is_err());
    }

    fn arb_set(n: usize) -> impl Strategy<Value = Vec<bool>> {
        prop::collection::vec(any::<bool>(), n * n)
    }

    fn build(n: usize, bits: &[bool]) -> VertexSet {
        let g = ProductGraph::new(n).unwrap();
        VertexSet::from_vertices(n, g.iter_vertices().zip(bits).filter(|(_, &b)| b).map(|(v, _)| v))
            .unwrap()
    }

    proptest! {
        #[test]
        fn fast_equals_raw((n, bits, a, b) in (4usize..=10).prop_flat_map(|n| (Just(n), arb_set(n), 0..n*n, 0..n*n-1))) {
            let g = ProductGraph::new(n).unwrap();
            let s = build(n, &bits);
            let b = if b >= a { b + 1 } else { b };
            let (x, y) = (g.vertex(a), g.vertex(b));
            prop_assert_eq!(delta_set_fast(&g, &s, x, y).unwrap(), delta_set_raw(&g, s.iter(), x, y).unwrap());
        }

        #[test]
        fn monotone_in_set((n, small, extra) in (3usize..=7).prop_flat_map(|n| (Just(n), arb_set(n), arb_set(n)))) {
            let g = ProductGraph::new(n).unwrap();
            let s = build(n, &small);
            let union: Vec<bool> = small.iter().zip(&extra).map(|(a, b)| *a || *b).collect();
            let t = build(n, &union);
            prop_assert!(s.is_subset(&t));
            for a in 0..n * n {
                for b in a + 1..n * n {
                    let (x, y) = (g.vertex(a), g.vertex(b));
                    prop_assert!(delta_set_fast(&g, &s, x, y).unwrap() <= delta_set_fast(&g, &t, x, y).unwrap());
                }
            }
        }

        #[test]
        fn transpose_preserves_minimum((n, bits) in (3usize..=8).prop_flat_map(|n| (Just(n), arb_set(n)))) {
            let g = ProductGraph::new(n).unwrap();
            let s = build(n, &bits);
            let m = min_delta(&g, &s).unwrap().value;
            prop_assert_eq!(m, min_delta(&g, &s.transpose()).unwrap().value);
        }
    }
}
