//! The direct product `K_n x K_n` and a BFS-backed distance oracle for
//! arbitrary connected graphs.
//!
//! Coordinates are 1-based throughout: a vertex of the product is a pair
//! `(i, j)` with `1 <= i, j <= n`. The row `L_i = {(i, *)}` is the vertical
//! layer of `(i, j)` and the column `L^j = {(*, j)}` its horizontal layer.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::BufRead;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};

/// A vertex `(i, j)` of the product graph. Ordering is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn transpose(self) -> Self {
        Self { i: self.j, j: self.i }
    }

    /// True iff the two vertices share a row or a column.
    pub fn same_layer(self, other: Vertex) -> bool {
        self.i == other.i || self.j == other.j
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((i, j): (usize, usize)) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.j)?;
        t.end()
    }
}

/// Anything that can report shortest-path distances between its vertices.
pub trait DistanceOracle: Sync {
    type Vertex: Copy + Ord + fmt::Debug + fmt::Display + Send + Sync;

    fn order(&self) -> usize;

    /// All vertices in ascending order.
    fn vertices(&self) -> Vec<Self::Vertex>;

    fn distance(&self, x: Self::Vertex, y: Self::Vertex) -> Result<u32>;
}

/// `K_n x K_n`: `(i,j) ~ (i',j')` iff `i != i'` and `j != j'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    n: usize,
}

pub fn make_product(n: usize) -> Result<ProductGraph> {
    ProductGraph::new(n)
}

impl ProductGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.n
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v.i == 0 || v.j == 0 || v.i > self.n || v.j > self.n {
            return Err(Error::InvalidVertex { i: v.i, j: v.j, n: self.n });
        }
        Ok(())
    }

    /// Closed-form distance; callers guarantee validity.
    #[inline]
    pub(crate) fn distance_unchecked(x: Vertex, y: Vertex) -> u32 {
        if x == y {
            0
        } else if x.i != y.i && x.j != y.j {
            1
        } else {
            2
        }
    }

    /// Row-major 0-based index.
    #[inline]
    pub fn index(&self, v: Vertex) -> usize {
        (v.i - 1) * self.n + (v.j - 1)
    }

    #[inline]
    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index / self.n + 1, index % self.n + 1)
    }

    pub fn iter_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.n).flat_map(move |i| (1..=self.n).map(move |j| Vertex::new(i, j)))
    }

    /// Vertical layer `L_i` (the row).
    pub fn row_layer(&self, i: usize) -> Vec<Vertex> {
        (1..=self.n).map(|j| Vertex::new(i, j)).collect()
    }

    /// Horizontal layer `L^j` (the column).
    pub fn column_layer(&self, j: usize) -> Vec<Vertex> {
        (1..=self.n).map(|i| Vertex::new(i, j)).collect()
    }

    /// `L_i^j`, the union of both layers through `v`.
    pub fn intersecting_layers(&self, v: Vertex) -> Vec<Vertex> {
        self.iter_vertices().filter(|u| u.same_layer(v)).collect()
    }

    /// The explicit edge set, as 1-based ids in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for b in a + 1..self.vertex_count() {
                let (x, y) = (self.vertex(a), self.vertex(b));
                if x.i != y.i && x.j != y.j {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }
}

impl DistanceOracle for ProductGraph {
    type Vertex = Vertex;

    fn order(&self) -> usize {
        self.vertex_count()
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.iter_vertices().collect()
    }

    fn distance(&self, x: Vertex, y: Vertex) -> Result<u32> {
        self.check(x)?;
        self.check(y)?;
        Ok(Self::distance_unchecked(x, y))
    }
}

/// All-pairs shortest paths of a connected simple graph, vertices `1..=order`.
#[derive(Clone, Debug)]
pub struct GeneralGraph {
    order: usize,
    dist: Vec<u32>,
}

pub fn load_general_graph(edges: &[(usize, usize)]) -> Result<GeneralGraph> {
    GeneralGraph::from_edges(edges)
}

impl GeneralGraph {
    /// The order is the largest id mentioned; every id in `1..=order` must be
    /// reachable.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        let order = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
        if order < 1 {
            return Err(Error::DegenerateGraph);
        }
        let mut adj = vec![Vec::new(); order];
        let mut seen = HashSet::new();
        for &(a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidVertexId { id: 0, order });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
            adj[a - 1].push(b - 1);
            adj[b - 1].push(a - 1);
        }

        let mut dist = vec![u32::MAX; order * order];
        let mut queue = VecDeque::new();
        for src in 0..order {
            let row = &mut dist[src * order..(src + 1) * order];
            row[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &w in &adj[u] {
                    if row[w] == u32::MAX {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(miss) = row.iter().position(|&d| d == u32::MAX) {
                return Err(Error::DisconnectedGraph(miss + 1));
            }
        }
        Ok(Self { order, dist })
    }

    /// Parses the edge-list text format: two whitespace-separated 1-based ids
    /// per line, `#` comment lines and blank lines skipped.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = parts.next().ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: "expected two vertex ids".into(),
                })?;
                tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("not a vertex id: {tok:?}"),
                })
            };
            let (a, b) = (next()?, next()?);
            if parts.next().is_some() {
                return Err(Error::Parse { line: lineno + 1, msg: "more than two fields".into() });
            }
            edges.push((a, b));
        }
        Self::from_edges(&edges)
    }

    #[inline]
    pub(crate) fn dist0(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.order + b]
    }
}

impl DistanceOracle for GeneralGraph {
    type Vertex = usize;

    fn order(&self) -> usize {
        self.order
    }

    fn vertices(&self) -> Vec<usize> {
        (1..=self.order).collect()
    }

    fn distance(&self, x: usize, y: usize) -> Result<u32> {
        for id in [x, y] {
            if id == 0 || id > self.order {
                return Err(Error::InvalidVertexId { id, order: self.order });
            }
        }
        Ok(self.dist0(x - 1, y - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_orders() {
        assert_eq!(make_product(3).unwrap().vertex_count(), 9);
        assert_eq!(make_product(4).unwrap().vertex_count(), 16);
        assert!(matches!(make_product(2), Err(Error::InvalidOrder(2))));
    }

    #[test]
    fn product_distances() {
        let g = make_product(4).unwrap();
        assert_eq!(g.distance(Vertex::new(1, 1), Vertex::new(2, 2)).unwrap(), 1);
        assert_eq!(g.distance(Vertex::new(1, 1), Vertex::new(1, 2)).unwrap(), 2);
        assert_eq!(g.distance(Vertex::new(3, 3), Vertex::new(3, 3)).unwrap(), 0);
        assert!(matches!(
            g.distance(Vertex::new(5, 1), Vertex::new(1, 1)),
            Err(Error::InvalidVertex { i: 5, .. })
        ));
        assert!(g.distance(Vertex::new(0, 1), Vertex::new(1, 1)).is_err());
    }

    #[test]
    fn general_graph_examples() {
        let tri = load_general_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(tri.distance(a, b).unwrap(), u32::from(a != b));
            }
        }
        let path = load_general_graph(&[(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.distance(1, 3).unwrap(), 2);
        assert!(matches!(
            load_general_graph(&[(1, 2), (3, 4)]),
            Err(Error::DisconnectedGraph(3))
        ));
        assert!(matches!(load_general_graph(&[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            load_general_graph(&[(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(1, 2))
        ));
        assert!(path.distance(4, 1).is_err());
    }

    #[test]
    fn edge_list_format() {
        let text = "# a 4-cycle\n1 2\n2 3\n\n3\t4\n4 1\n";
        let g = GeneralGraph::parse_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.distance(1, 3).unwrap(), 2);
        let bad = GeneralGraph::parse_edge_list("1 2\n2 x\n".as_bytes());
        assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
        let short = GeneralGraph::parse_edge_list("1\n".as_bytes());
        assert!(matches!(short, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn closed_form_matches_bfs_on_explicit_edges() {
        for n in 3..=12 {
            let g = make_product(n).unwrap();
            let bfs = load_general_graph(&g.edges()).unwrap();
            for a in 0..g.vertex_count() {
                for b in 0..g.vertex_count() {
                    let d = g.distance(g.vertex(a), g.vertex(b)).unwrap();
                    assert_eq!(d, bfs.distance(a + 1, b + 1).unwrap(), "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn layer_sizes() {
        for n in 3..=12 {
            let g = make_product(n).unwrap();
            for v in g.iter_vertices() {
                assert_eq!(g.row_layer(v.i).len(), n);
                assert_eq!(g.column_layer(v.j).len(), n);
                assert_eq!(g.intersecting_layers(v).len(), 2 * n - 1);
            }
        }
    }
}
