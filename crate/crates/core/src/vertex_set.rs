use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A subset of `[n] x [n]` with O(1) membership and maintained layer counts
/// `a_r = |L_r ∩ S|` (rows) and `b_s = |L^s ∩ S|` (columns).
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    members: Vec<bool>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: vec![false; n * n],
            rows: vec![0; n],
            cols: vec![0; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: vec![true; n * n],
            rows: vec![n; n],
            cols: vec![n; n],
            len: n * n,
        }
    }

    pub fn from_vertices<I>(n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Vertex>,
    {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v.into())?;
        }
        Ok(s)
    }

    /// `V` minus the given holes.
    pub fn complement_of<I>(n: usize, holes: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Vertex>,
    {
        let mut s = Self::full(n);
        for v in holes {
            s.remove(v.into())?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn slot(&self, v: Vertex) -> Result<usize> {
        if v.i == 0 || v.j == 0 || v.i > self.n || v.j > self.n {
            return Err(Error::InvalidVertex { i: v.i, j: v.j, n: self.n });
        }
        Ok((v.i - 1) * self.n + (v.j - 1))
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v.i >= 1
            && v.j >= 1
            && v.i <= self.n
            && v.j <= self.n
            && self.members[(v.i - 1) * self.n + (v.j - 1)]
    }

    /// Membership for a vertex the caller knows to be in range.
    #[inline]
    pub(crate) fn has(&self, v: Vertex) -> bool {
        self.members[(v.i - 1) * self.n + (v.j - 1)]
    }

    /// Returns whether the vertex was newly inserted.
    pub fn insert(&mut self, v: Vertex) -> Result<bool> {
        let slot = self.slot(v)?;
        if self.members[slot] {
            return Ok(false);
        }
        self.members[slot] = true;
        self.rows[v.i - 1] += 1;
        self.cols[v.j - 1] += 1;
        self.len += 1;
        Ok(true)
    }

    /// Returns whether the vertex was present.
    pub fn remove(&mut self, v: Vertex) -> Result<bool> {
        let slot = self.slot(v)?;
        if !self.members[slot] {
            return Ok(false);
        }
        self.members[slot] = false;
        self.rows[v.i - 1] -= 1;
        self.cols[v.j - 1] -= 1;
        self.len -= 1;
        Ok(true)
    }

    /// `a_i`, 1-based row.
    #[inline]
    pub fn row_count(&self, i: usize) -> usize {
        self.rows[i - 1]
    }

    /// `b_j`, 1-based column.
    #[inline]
    pub fn col_count(&self, j: usize) -> usize {
        self.cols[j - 1]
    }

    pub fn row_counts(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_counts(&self) -> &[usize] {
        &self.cols
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(idx, _)| Vertex::new(idx / self.n + 1, idx % self.n + 1))
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let members: Vec<bool> = self.members.iter().map(|m| !m).collect();
        Self {
            n: self.n,
            members,
            rows: self.rows.iter().map(|a| self.n - a).collect(),
            cols: self.cols.iter().map(|b| self.n - b).collect(),
            len: self.n * self.n - self.len,
        }
    }

    /// `{(j, i) : (i, j) ∈ S}`.
    pub fn transpose(&self) -> Self {
        let mut t = Self::empty(self.n);
        for v in self.iter() {
            t.insert(v.transpose()).expect("transpose stays in range");
        }
        t
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.iter().all(|v| other.has(v))
    }

    /// Debug helper: layer counts recomputed from membership.
    pub fn recount(&self) -> (Vec<usize>, Vec<usize>) {
        let mut rows = vec![0; self.n];
        let mut cols = vec![0; self.n];
        for v in self.iter() {
            rows[v.i - 1] += 1;
            cols[v.j - 1] += 1;
        }
        (rows, cols)
    }

    /// One text line per row, `#` for members and `.` otherwise.
    pub fn render_grid(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.push(if self.has(Vertex::new(i, j)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VertexSet")
            .field("n", &self.n)
            .field("members", &self.to_vec())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_bookkeeping() {
        let mut s = VertexSet::empty(4);
        assert!(s.insert(Vertex::new(1, 2)).unwrap());
        assert!(!s.insert(Vertex::new(1, 2)).unwrap());
        s.insert(Vertex::new(3, 2)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.row_count(1), 1);
        assert_eq!(s.col_count(2), 2);
        assert!(s.remove(Vertex::new(1, 2)).unwrap());
        assert!(!s.remove(Vertex::new(1, 2)).unwrap());
        assert_eq!(s.col_count(2), 1);
        assert!(s.insert(Vertex::new(5, 1)).is_err());
        assert!(!s.contains(Vertex::new(0, 0)));
    }

    #[test]
    fn complement_and_transpose() {
        let s = VertexSet::from_vertices(3, [(1, 2), (2, 3)]).unwrap();
        let c = s.complement();
        assert_eq!(c.len(), 7);
        assert_eq!(c.row_count(1), 2);
        assert_eq!(c.complement(), s);
        let t = s.transpose();
        assert_eq!(t.to_vec(), vec![Vertex::new(2, 1), Vertex::new(3, 2)]);
        assert_eq!(s.render_grid(), ".#.\n..#\n...\n");
    }

    proptest! {
        #[test]
        fn counts_track_membership(n in 3usize..9, ops in prop::collection::vec((any::<bool>(), 1usize..9, 1usize..9), 0..80)) {
            let mut s = VertexSet::empty(n);
            for (add, i, j) in ops {
                let v = Vertex::new(i.min(n), j.min(n));
                if add { s.insert(v).unwrap(); } else { s.remove(v).unwrap(); }
                let (rows, cols) = s.recount();
                prop_assert_eq!(rows.as_slice(), s.row_counts());
                prop_assert_eq!(cols.as_slice(), s.col_counts());
                prop_assert_eq!(rows.iter().sum::<usize>(), s.len());
                prop_assert_eq!(cols.iter().sum::<usize>(), s.len());
            }
        }
    }
}
