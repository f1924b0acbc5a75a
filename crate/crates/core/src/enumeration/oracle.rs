//! Exhaustive oracles, independent of the counting recursion.
//!
//! [`for_each_graph`] walks all `2^C(k,2)` labeled graphs (bit `b` of the
//! index is the `b`-th pair in lexicographic order). [`for_each_realization`]
//! backtracks over neighbour sets, vertex by vertex, and is what makes
//! orders like `k = 9` reachable.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::BigCount;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Default number of graphs a full scan may visit (all graphs on 7 vertices).
pub const DEFAULT_SCAN_BUDGET: u64 = 1 << 21;

pub fn for_each_graph(k: usize, budget: u64, mut f: impl FnMut(&Graph)) -> Result<()> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect();
    if pairs.len() >= 63 || (1u64 << pairs.len()) > budget {
        return Err(Error::Budget(format!(
            "a full scan of k = {k} visits 2^{} graphs, over the budget of {budget}",
            pairs.len()
        )));
    }
    let mut g = Graph::empty(k);
    // Gray code order: consecutive graphs differ in one pair
    f(&g);
    for step in 1u64..(1u64 << pairs.len()) {
        let (u, v) = pairs[step.trailing_zeros() as usize];
        if g.has_edge(u, v) {
            g.remove_edge(u, v);
        } else {
            g.add_edge(u, v);
        }
        f(&g);
    }
    Ok(())
}

/// Number of graphs on `k` vertices satisfying `predicate`, by full scan.
pub fn brute_force_count(k: usize, predicate: impl Fn(&Graph) -> bool) -> Result<BigCount> {
    brute_force_count_with_budget(k, DEFAULT_SCAN_BUDGET, predicate)
}

pub fn brute_force_count_with_budget(
    k: usize,
    budget: u64,
    predicate: impl Fn(&Graph) -> bool,
) -> Result<BigCount> {
    let mut hits = 0u64;
    for_each_graph(k, budget, |g| {
        if predicate(g) {
            hits += 1;
        }
    })?;
    Ok(BigCount(BigUint::from(hits)))
}

/// Histogram of degree sequences over all graphs on `k` vertices.
pub fn degree_histogram(k: usize) -> Result<HashMap<Vec<u32>, u64>> {
    let mut hist = HashMap::new();
    for_each_graph(k, DEFAULT_SCAN_BUDGET, |g| {
        *hist.entry(g.degree_sequence().as_slice().to_vec()).or_insert(0) += 1;
    })?;
    Ok(hist)
}

/// Visits every labeled graph with exactly the given degrees.
pub fn for_each_realization(degrees: &[u32], mut f: impl FnMut(&Graph)) -> Result<()> {
    let n = degrees.len();
    if n > MAX_VERTICES {
        return Err(Error::domain(format!("{n} vertices exceed the {MAX_VERTICES}-vertex cap")));
    }
    let mut residual: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    let mut g = Graph::empty(n);
    place(0, &mut residual, &mut g, &mut f);
    Ok(())
}

fn place(u: usize, residual: &mut Vec<i64>, g: &mut Graph, f: &mut impl FnMut(&Graph)) {
    let n = residual.len();
    if u == n {
        f(g);
        return;
    }
    let need = residual[u] as usize;
    let cands: Vec<usize> = (u + 1..n).filter(|&v| residual[v] > 0).collect();
    if cands.len() < need {
        return;
    }
    let mut chosen = Vec::with_capacity(need);
    choose(0, need, &cands, &mut chosen, u, residual, g, f);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    from: usize,
    need: usize,
    cands: &[usize],
    chosen: &mut Vec<usize>,
    u: usize,
    residual: &mut Vec<i64>,
    g: &mut Graph,
    f: &mut impl FnMut(&Graph),
) {
    if chosen.len() == need {
        let saved = residual[u];
        residual[u] = 0;
        place(u + 1, residual, g, f);
        residual[u] = saved;
        return;
    }
    for idx in from..cands.len() {
        if cands.len() - idx < need - chosen.len() {
            break;
        }
        let v = cands[idx];
        chosen.push(v);
        residual[v] -= 1;
        g.add_edge(u, v);
        choose(idx + 1, need, cands, chosen, u, residual, g, f);
        g.remove_edge(u, v);
        residual[v] += 1;
        chosen.pop();
    }
}
