//! Largest induced regular subgraph of a concrete graph.
//!
//! Results are ordered by size (larger first), then degree `r` (smaller
//! first), then the numeric value of the vertex bitmask (smaller first).

mod exact;
mod heuristic;

use serde::Serialize;

use crate::graph::{bits, full_mask, Graph};

pub use exact::{max_induced_regular_exact, DEFAULT_NODE_BUDGET};
pub use heuristic::{max_induced_regular_heuristic, DEFAULT_ITERATION_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Sorted vertex list.
    pub subset: Vec<usize>,
    pub r: usize,
    pub size: usize,
    pub optimal: bool,
    pub nodes_expanded: u64,
}

impl SearchResult {
    /// Builds a result after checking that `mask` induces an `r`-regular
    /// subgraph. A failed check is a bug in the caller, so it panics.
    pub(crate) fn verified(g: &Graph, mask: u64, r: usize, optimal: bool, nodes: u64) -> Self {
        assert_eq!(
            g.induced_regular_degree(mask),
            Some(r),
            "search produced a subset that is not {r}-regular"
        );
        SearchResult {
            subset: bits(mask).collect(),
            r,
            size: mask.count_ones() as usize,
            optimal,
            nodes_expanded: nodes,
        }
    }

    pub fn mask(&self) -> u64 {
        self.subset.iter().fold(0, |m, &v| m | 1u64 << v)
    }
}

/// `true` if `(size, r, mask)` beats `(other_size, other_r, other_mask)`.
pub(crate) fn better(a: (usize, usize, u64), b: (usize, usize, u64)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && (a.1 < b.1 || (a.1 == b.1 && a.2 < b.2)))
}

/// Reference answer by visiting all `2^n` subsets. Only for small `n`.
pub fn max_induced_regular_brute_force(g: &Graph) -> SearchResult {
    let n = g.order();
    assert!(n <= 24, "2^n enumeration is limited to n <= 24");
    let mut best = (0usize, 0usize, 0u64);
    for mask in 1..=full_mask(n) {
        if let Some(r) = g.induced_regular_degree(mask) {
            let cand = (mask.count_ones() as usize, r, mask);
            if better(cand, best) {
                best = cand;
            }
        }
    }
    SearchResult::verified(g, best.2, best.1, true, 1u64 << n)
}

/// Greedy independent set and greedy clique, lowest labels first; the
/// larger one (independent set on ties).
pub(crate) fn greedy_incumbent(g: &Graph) -> (u64, usize) {
    let n = g.order();
    let mut indep = 0u64;
    let mut clique = 0u64;
    for v in 0..n {
        if g.neighbors(v) & indep == 0 {
            indep |= 1 << v;
        }
        if clique & !g.neighbors(v) == 0 {
            clique |= 1 << v;
        }
    }
    if clique.count_ones() > indep.count_ones() {
        (clique, clique.count_ones() as usize - 1)
    } else {
        (indep, 0)
    }
}
