//! Labeled simple graphs stored as adjacency bit-rows.
//!
//! Vertices are `0..n`. The "first i vertices" of a graph are the labels
//! `0..i`. Every row is a single `u64`, so the order is capped at
//! [`MAX_VERTICES`]; the cap is checked, never silently applied.

mod graph6;
mod random;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use graph6::{parse_graph6, parse_graph6_lines, write_graph6};
pub use random::{sample_gnp, GraphRng, Seed};
pub(crate) use random::below;

pub const MAX_VERTICES: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds the {MAX_VERTICES}-vertex cap");
        Graph { n, rows: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.rows[v] = full_mask(n) & !(1u64 << v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
            g.add_edge(v, v + 5);
            g.add_edge(v + 5, (v + 2) % 5 + 5);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::domain(format!(
                "graph order {n} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, checking symmetry and the zero diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::domain(format!(
                "graph order {n} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        for (v, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                return Err(Error::domain(format!("row {v} has bits beyond n = {n}")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::domain(format!("loop at vertex {v}")));
            }
            for u in bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::domain(format!("asymmetric adjacency at ({v}, {u})")));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge ({u}, {v})");
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "invalid edge ({u}, {v})");
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.rows[u] >> u >> 1).map(move |b| (u, u + 1 + b)))
    }

    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        let rows = (0..self.n)
            .map(|v| !self.rows[v] & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new((0..self.n).map(|v| self.degree(v) as u32).collect())
    }

    /// The subgraph spanned by `subset`, relabeled `0..|subset|` in
    /// increasing label order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::domain(format!("vertex {bad} out of range for n = {}", self.n)));
        }
        let mut g = Graph::empty(sorted.len());
        for (a, &u) in sorted.iter().enumerate() {
            for (b, &v) in sorted.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Induced subgraph on a vertex mask.
    pub fn induced_by_mask(&self, mask: u64) -> Graph {
        let subset: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        self.induced_subgraph(&subset).expect("mask is in range")
    }

    /// The common degree if the graph is regular. The null graph is
    /// 0-regular by convention.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = if self.n == 0 { 0 } else { self.degree(0) };
        (1..self.n).all(|v| self.degree(v) == first).then_some(first)
    }

    /// The degree r if the subgraph induced on `mask` is r-regular.
    pub fn induced_regular_degree(&self, mask: u64) -> Option<usize> {
        let mut it = bits(mask);
        let first = match it.next() {
            None => return Some(0),
            Some(v) => (self.rows[v] & mask).count_ones(),
        };
        it.all(|v| (self.rows[v] & mask).count_ones() == first)
            .then_some(first as usize)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, write_graph6(self))
    }
}

/// Per-vertex degrees, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Self {
        DegreeSequence(degrees)
    }

    /// The constant sequence `(r, r, ..., r)` of length `len`.
    pub fn regular(len: usize, r: u32) -> Self {
        DegreeSequence(vec![r; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn sorted(&self) -> DegreeSequence {
        let mut v = self.0.clone();
        v.sort_unstable();
        DegreeSequence(v)
    }

    /// Erdős–Gallai test.
    pub fn is_graphical(&self) -> bool {
        is_graphical(&self.0)
    }
}

impl From<Vec<u32>> for DegreeSequence {
    fn from(v: Vec<u32>) -> Self {
        DegreeSequence(v)
    }
}

/// True iff some simple graph has exactly these degrees (Erdős–Gallai).
pub fn is_graphical(degrees: &[u32]) -> bool {
    let mut d: Vec<u64> = degrees.iter().map(|&x| x as u64).collect();
    if d.iter().sum::<u64>() % 2 == 1 {
        return false;
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let mut prefix = 0u64;
    for k in 1..=n {
        prefix += d[k - 1];
        let kk = k as u64;
        let tail: u64 = d[k..].iter().map(|&x| x.min(kk)).sum();
        if prefix > kk * (kk - 1) + tail {
            return false;
        }
    }
    true
}
