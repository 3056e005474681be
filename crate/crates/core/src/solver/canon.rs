//! Orbit representatives of 0/1 matrices under row permutations, column
//! permutations and transposition.
//!
//! A matrix is stored as one bitmask per row. Row permutations are factored
//! out by keeping rows in descending order; a matrix is canonical when no
//! column permutation produces a lexicographically larger sorted row list.
//! Every prefix of a canonical matrix is canonical, so the check can prune
//! partial matrices row by row. Transposition is only checked on complete
//! matrices.

/// Symmetric mode precomputes `n!` lookup tables of `2^n` entries.
pub const MAX_SYMMETRIC_N: usize = 7;

pub(crate) struct ColumnPerms {
    width: usize,
    /// `tables[p << width | mask]` is `mask` with columns permuted by `p`.
    tables: Vec<u32>,
    count: usize,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                go(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl ColumnPerms {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_SYMMETRIC_N, "symmetric mode supports n <= {MAX_SYMMETRIC_N}");
        let perms = permutations(n);
        let size = 1usize << n;
        let mut tables = vec![0u32; perms.len() * size];
        for (p, perm) in perms.iter().enumerate() {
            for mask in 0..size {
                let mut out = 0u32;
                for (bit, &to) in perm.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        out |= 1 << to;
                    }
                }
                tables[p * size + mask] = out;
            }
        }
        Self { width: n, tables, count: perms.len() }
    }

    #[inline]
    fn apply(&self, p: usize, mask: u32) -> u32 {
        self.tables[(p << self.width) | mask as usize]
    }

    /// `rows` must be in descending order.
    pub fn is_canonical_prefix(&self, rows: &[u32]) -> bool {
        let mut buf = [0u32; 32];
        let buf = &mut buf[..rows.len()];
        // p = 0 is the identity
        for p in 1..self.count {
            let mut top = 0;
            for (slot, &r) in buf.iter_mut().zip(rows) {
                *slot = self.apply(p, r);
                top = top.max(*slot);
            }
            if top < rows[0] {
                continue;
            }
            if top > rows[0] {
                return false;
            }
            buf.sort_unstable_by(|a, b| b.cmp(a));
            if &*buf > rows {
                return false;
            }
        }
        true
    }

    /// Largest sorted row list over all column permutations.
    pub fn canonical_form(&self, rows: &[u32]) -> Vec<u32> {
        let mut best: Vec<u32> = Vec::new();
        let mut buf = vec![0u32; rows.len()];
        for p in 0..self.count {
            for (slot, &r) in buf.iter_mut().zip(rows) {
                *slot = self.apply(p, r);
            }
            buf.sort_unstable_by(|a, b| b.cmp(a));
            if buf > best {
                best.clone_from(&buf);
            }
        }
        best
    }

    /// Canonical complete matrix that also dominates its transpose.
    pub fn is_orbit_representative(&self, rows: &[u32]) -> bool {
        let t = transpose(rows, self.width);
        self.canonical_form(&t).as_slice() <= rows
    }
}

/// Matrix transpose; column `c` lives in bit `width − 1 − c`.
pub(crate) fn transpose(rows: &[u32], width: usize) -> Vec<u32> {
    let n = rows.len();
    (0..width)
        .map(|c| {
            let bit = width - 1 - c;
            rows.iter()
                .enumerate()
                .fold(0u32, |acc, (r, &m)| if m >> bit & 1 == 1 { acc | 1 << (n - 1 - r) } else { acc })
        })
        .collect()
}
