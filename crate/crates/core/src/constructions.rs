//! Explicit weak k-resolving sets of `K_n x K_n`.
//!
//! Large-k sets are complements of unions of wrapped diagonal bands
//! `D_j = {(i+j, i) : i ∈ [n−j]} ∪ {(i, n−j+i) : i ∈ [j]}`, each a
//! permutation matrix, so every row and column loses exactly one vertex per
//! band.

use serde::Serialize;

use crate::delta::product_kappa;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstructionTag {
    #[serde(rename = "K2-BLOCKS")]
    K2Blocks,
    #[serde(rename = "K3-DIAGONALS")]
    K3Diagonals,
    #[serde(rename = "K4-PATTERN")]
    K4Pattern,
    #[serde(rename = "TOP-FULL")]
    TopFull,
    #[serde(rename = "TOP-MINUS-ONE")]
    TopMinusOne,
    #[serde(rename = "TOP-MINUS-DIAG")]
    TopMinusDiag,
    #[serde(rename = "SPECIAL-4-7")]
    Special47,
    #[serde(rename = "EVEN-COMPLEMENT")]
    EvenComplement,
    #[serde(rename = "ODD-COMPLEMENT")]
    OddComplement,
}

impl ConstructionTag {
    pub fn label(self) -> &'static str {
        match self {
            ConstructionTag::K2Blocks => "K2-BLOCKS",
            ConstructionTag::K3Diagonals => "K3-DIAGONALS",
            ConstructionTag::K4Pattern => "K4-PATTERN",
            ConstructionTag::TopFull => "TOP-FULL",
            ConstructionTag::TopMinusOne => "TOP-MINUS-ONE",
            ConstructionTag::TopMinusDiag => "TOP-MINUS-DIAG",
            ConstructionTag::Special47 => "SPECIAL-4-7",
            ConstructionTag::EvenComplement => "EVEN-COMPLEMENT",
            ConstructionTag::OddComplement => "ODD-COMPLEMENT",
        }
    }
}

/// A constructed set and the case that produced it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub tag: ConstructionTag,
    pub n: usize,
    pub k: usize,
    pub t: Option<usize>,
    /// Size claimed for this case; equals `set.len()`.
    pub claimed_size: usize,
    pub set: VertexSet,
}

/// JSON descriptor `{tag, n, k, t, size}`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionDescriptor {
    pub tag: ConstructionTag,
    pub n: usize,
    pub k: usize,
    pub t: Option<usize>,
    pub size: usize,
}

impl Construction {
    pub fn descriptor(&self) -> ConstructionDescriptor {
        ConstructionDescriptor { tag: self.tag, n: self.n, k: self.k, t: self.t, size: self.set.len() }
    }
}

pub fn diagonal_band(n: usize, j: usize) -> Result<Vec<Vertex>> {
    if n == 0 || j >= n {
        return Err(Error::InvalidParameter(format!("band index j={j} must lie in [0, {}]", n.saturating_sub(1))));
    }
    if j == 0 {
        return Ok((1..=n).map(|i| Vertex::new(i, i)).collect());
    }
    let lower = (1..=n - j).map(|i| Vertex::new(i + j, i));
    let wrap = (1..=j).map(|i| Vertex::new(i, n - j + i));
    Ok(lower.chain(wrap).collect())
}

fn bands(n: usize, count: usize) -> Vec<Vertex> {
    (0..count).flat_map(|j| diagonal_band(n, j).expect("band index < n")).collect()
}

/// Tail for `n ≡ 2 (mod 3)` at `k = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockTail {
    /// `{(n−1,n−1), (n−1,n), (n,n−2)}`
    Skew,
    /// `{(n−1,n−1), (n−1,n), (n,n)}`
    Corner,
}

/// The `k = 2` block set. Each block `i ∈ [⌊n/3⌋]` is
/// `{(3i−2,3i−2), (3i−2,3i−1), (3i−1,3i), (3i,3i)}`.
pub fn k2_blocks(n: usize, tail: BlockTail) -> Vec<Vertex> {
    let mut out = Vec::new();
    for b in 1..=n / 3 {
        let r = 3 * b - 2;
        out.extend([Vertex::new(r, r), Vertex::new(r, r + 1), Vertex::new(r + 1, r + 2), Vertex::new(r + 2, r + 2)]);
    }
    match n % 3 {
        1 => out.extend([Vertex::new(n, n - 1), Vertex::new(n, n)]),
        2 => {
            out.extend([Vertex::new(n - 1, n - 1), Vertex::new(n - 1, n)]);
            out.push(match tail {
                BlockTail::Skew => Vertex::new(n, n - 2),
                BlockTail::Corner => Vertex::new(n, n),
            });
        }
        _ => {}
    }
    out
}

/// The `k = 4` pattern for `n >= 9`: main diagonal, the `+2` diagonal, four
/// fixed corrections and `(i, i−1)` for `i ≡ 2 (mod 4)`, `6 <= i <= n−2`.
pub fn k4_pattern(n: usize) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = (1..=n).map(|i| Vertex::new(i, i)).collect();
    out.extend((1..=n - 2).map(|i| Vertex::new(i, i + 2)));
    out.extend([Vertex::new(2, 1), Vertex::new(3, 2), Vertex::new(n - 1, n - 2), Vertex::new(n, n - 1)]);
    out.extend((6..=n - 2).filter(|i| i % 4 == 2).map(|i| Vertex::new(i, i - 1)));
    out
}

/// Holes for `k = 2n − 2`: `{(1,1), (n,n)} ∪ {(i, i+1) : i ∈ [n−1]}`.
fn near_diagonal_holes(n: usize) -> Vec<Vertex> {
    let mut out = vec![Vertex::new(1, 1), Vertex::new(n, n)];
    out.extend((1..n).map(|i| Vertex::new(i, i + 1)));
    out
}

/// Holes for `k = 2n − 2t − 1`: bands `D_0 … D_{t−1}` plus the partial band
/// `{(i, i−t) : i ≡ 0 (mod t+1)}`.
fn odd_holes(n: usize, t: usize) -> Vec<Vertex> {
    let mut out = bands(n, t);
    out.extend((1..=n).filter(|i| i % (t + 1) == 0).map(|i| Vertex::new(i, i - t)));
    out
}

/// Whether `construct(n, k)` has a case for this cell.
pub fn is_covered(n: usize, k: usize) -> bool {
    case_for(n, k).is_some()
}

fn case_for(n: usize, k: usize) -> Option<(ConstructionTag, Option<usize>)> {
    use ConstructionTag::*;
    if n < 4 {
        return None;
    }
    let odd_t = (k % 2 == 1 && k + 3 <= 2 * n).then(|| (2 * n - 1 - k) / 2);
    let even_t = (k.is_multiple_of(2) && k + 4 <= 2 * n).then(|| (2 * n - k) / 2);
    match k {
        2 => Some((K2Blocks, None)),
        3 => Some((K3Diagonals, None)),
        4 if n >= 9 => Some((K4Pattern, None)),
        7 if n == 4 => Some((Special47, None)),
        _ if k == 2 * n + 1 || k == 2 * n + 2 => Some((TopFull, None)),
        _ if k == 2 * n => Some((TopMinusOne, None)),
        _ if k == 2 * n - 1 && n >= 5 => Some((TopMinusDiag, None)),
        _ if k == 2 * n - 2 => Some((EvenComplement, Some(1))),
        _ => {
            if let Some(t) = even_t.filter(|&t| (2..=n - 3).contains(&t)) {
                Some((EvenComplement, Some(t)))
            } else {
                odd_t.filter(|&t| n >= 6 && t <= n - 3).map(|t| (OddComplement, Some(t)))
            }
        }
    }
}

fn nearest_covered(n: usize, k: usize) -> String {
    if n < 4 {
        return "constructions start at n=4; n=3 values come from exhaustive search".into();
    }
    let kappa = product_kappa(n);
    let nearest = (1..=kappa)
        .filter(|&c| is_covered(n, c))
        .min_by_key(|&c| (c.abs_diff(k), c));
    let hint = match k {
        1 => "k=1 is the classical metric dimension",
        4 => "the k=4 pattern requires n>=9",
        _ if k > kappa => "k exceeds kappa",
        _ => "the odd band construction requires n>=6",
    };
    match nearest {
        Some(c) => format!("{hint}; nearest covered regime is (n={n}, k={c})"),
        None => hint.to_string(),
    }
}

pub fn construct(n: usize, k: usize) -> Result<Construction> {
    use ConstructionTag::*;
    let Some((tag, t)) = case_for(n, k) else {
        return Err(Error::NoKnownConstruction { n, k, nearest: nearest_covered(n, k) });
    };
    let sq = n * n;
    let (set, claimed_size) = match tag {
        K2Blocks => (VertexSet::from_vertices(n, k2_blocks(n, BlockTail::Skew))?, n + n.div_ceil(3)),
        K3Diagonals => (VertexSet::from_vertices(n, bands(n, 2))?, 2 * n),
        K4Pattern => (VertexSet::from_vertices(n, k4_pattern(n))?, 2 * n + 1 + n / 4),
        TopFull => (VertexSet::full(n), sq),
        TopMinusOne => (VertexSet::complement_of(n, [(1, 1)])?, sq - 1),
        TopMinusDiag => (VertexSet::complement_of(n, bands(n, 1))?, sq - n),
        Special47 => (VertexSet::complement_of(n, [(1, 2), (2, 3), (3, 4)])?, 13),
        EvenComplement => {
            let t = t.expect("even case carries t");
            if t == 1 {
                (VertexSet::complement_of(n, near_diagonal_holes(n))?, sq - n - 1)
            } else {
                (VertexSet::complement_of(n, bands(n, t))?, sq - t * n)
            }
        }
        OddComplement => {
            let t = t.expect("odd case carries t");
            (VertexSet::complement_of(n, odd_holes(n, t))?, sq - t * n - n / (t + 1))
        }
    };
    debug_assert_eq!(set.len(), claimed_size, "{tag:?} n={n} k={k}");
    Ok(Construction { tag, n, k, t, claimed_size, set })
}

/// Every covered `(n, k)` with `n` in the given range.
pub fn covered_cells(ns: std::ops::RangeInclusive<usize>) -> Vec<(usize, usize)> {
    ns.flat_map(|n| (1..=product_kappa(n.max(3))).filter(move |&k| is_covered(n, k)).map(move |k| (n, k)))
        .collect()
}
