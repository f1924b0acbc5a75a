use rand::RngCore;

use super::{better, greedy_incumbent, SearchResult};
use crate::graph::{below, bits, full_mask, Graph, GraphRng, Seed};

/// Default iteration budget: 200 restarts of 100 moves.
pub const DEFAULT_ITERATION_BUDGET: u64 = 20_000;

const MOVES_PER_RESTART: u64 = 100;
const TABU_TENURE: u64 = 7;

/// Seeded local search for a large induced regular subgraph.
///
/// Restart `s` (there are `budget / 100`) draws its randomness from
/// `seed.derive(s)`, picks a target size `k` (one above the best so far,
/// or with probability 1/4 uniform above it) and a degree `r` with `k r`
/// even, grows a seeded greedy kernel of size `k`, then makes swap moves
/// that minimise the number of vertices whose induced degree is not `r`
/// (ties: total deviation, then a seeded coin). After a hit the target
/// grows by one vertex. The result never shrinks during a run and always
/// carries `optimal = false`.
pub fn max_induced_regular_heuristic(g: &Graph, seed: Seed, budget: u64) -> SearchResult {
    let n = g.order();
    let (mut best_mask, mut best_r) = greedy_incumbent(g);
    if n == 0 {
        return SearchResult::verified(g, 0, 0, false, 0);
    }
    let mut iterations = 0u64;
    for s in 0..budget / MOVES_PER_RESTART {
        let best_size = best_mask.count_ones() as usize;
        if best_size == n {
            break;
        }
        let mut rng = seed.derive(s).rng();
        let k = if below(&mut rng, 4) == 0 {
            best_size + 1 + below(&mut rng, (n - best_size) as u64) as usize
        } else {
            best_size + 1
        };
        let feasible: Vec<usize> = (0..k).filter(|r| k * r % 2 == 0).collect();
        let r = feasible[below(&mut rng, feasible.len() as u64) as usize];
        let mut state = Walk::new(g, r, kernel(g, k, r, &mut rng));
        let mut moves = 0;
        while moves < MOVES_PER_RESTART {
            if state.violations() == 0 {
                let cand = (state.mask.count_ones() as usize, state.r, state.mask);
                if better(cand, (best_mask.count_ones() as usize, best_r, best_mask)) {
                    best_mask = state.mask;
                    best_r = state.r;
                }
                if !state.grow(&mut rng) {
                    break;
                }
            } else {
                state.step(moves, &mut rng);
            }
            moves += 1;
        }
        iterations += moves;
    }
    SearchResult::verified(g, best_mask, best_r, false, iterations)
}

/// Random start vertex, then repeatedly the outside vertex whose addition
/// keeps the induced degrees closest to `r`.
fn kernel(g: &Graph, k: usize, r: usize, rng: &mut GraphRng) -> u64 {
    let n = g.order();
    let mut mask = 1u64 << below(rng, n as u64);
    while (mask.count_ones() as usize) < k {
        let outside = full_mask(n) & !mask;
        let w = pick_min(bits(outside), rng, |w| {
            let with = mask | 1u64 << w;
            deviation(g, with, r)
        });
        mask |= 1u64 << w;
    }
    mask
}

/// `(violations, total deviation)` for target degree `r` on `mask`.
fn deviation(g: &Graph, mask: u64, r: usize) -> (u32, u32) {
    let mut v = 0;
    let mut l1 = 0;
    for u in bits(mask) {
        let d = (g.neighbors(u) & mask).count_ones() as i64;
        let gap = (d - r as i64).unsigned_abs() as u32;
        v += (gap > 0) as u32;
        l1 += gap;
    }
    (v, l1)
}

/// Minimum of `score` over `items`; ties uniform via reservoir sampling.
fn pick_min<T: Ord + Copy>(
    items: impl Iterator<Item = usize>,
    rng: &mut GraphRng,
    score: impl Fn(usize) -> T,
) -> usize {
    let mut best: Option<(T, usize)> = None;
    let mut ties = 0u64;
    for x in items {
        let s = score(x);
        match best {
            Some((b, _)) if s > b => {}
            Some((b, _)) if s == b => {
                ties += 1;
                if below(rng, ties) == 0 {
                    best = Some((s, x));
                }
            }
            _ => {
                best = Some((s, x));
                ties = 1;
            }
        }
    }
    best.expect("non-empty candidate set").1
}

struct Walk<'a> {
    g: &'a Graph,
    r: usize,
    mask: u64,
    /// Move index until which a vertex may not change sides.
    tabu: Vec<u64>,
}

impl<'a> Walk<'a> {
    fn new(g: &'a Graph, r: usize, mask: u64) -> Self {
        Walk {
            g,
            r,
            mask,
            tabu: vec![0; g.order()],
        }
    }

    fn violations(&self) -> u32 {
        deviation(self.g, self.mask, self.r).0
    }

    /// Best non-tabu swap, plateau moves allowed.
    fn step(&mut self, now: u64, rng: &mut GraphRng) {
        let n = self.g.order();
        let inside: Vec<usize> = bits(self.mask).filter(|&u| self.tabu[u] <= now).collect();
        let outside: Vec<usize> = bits(full_mask(n) & !self.mask)
            .filter(|&w| self.tabu[w] <= now)
            .collect();
        if inside.is_empty() || outside.is_empty() {
            return;
        }
        let pairs = inside.len() * outside.len();
        let mask = self.mask;
        let idx = pick_min(0..pairs, rng, |p| {
            let (u, w) = (inside[p / outside.len()], outside[p % outside.len()]);
            deviation(self.g, mask & !(1u64 << u) | 1u64 << w, self.r)
        });
        let (u, w) = (inside[idx / outside.len()], outside[idx % outside.len()]);
        self.mask = mask & !(1u64 << u) | 1u64 << w;
        self.tabu[u] = now + TABU_TENURE;
        self.tabu[w] = now + TABU_TENURE;
    }

    /// Adds the best outside vertex, moving `r` by one when the new size
    /// would make the degree sum odd. `false` when nothing is left to add.
    fn grow(&mut self, rng: &mut GraphRng) -> bool {
        let n = self.g.order();
        let outside = full_mask(n) & !self.mask;
        if outside == 0 {
            return false;
        }
        let k = self.mask.count_ones() as usize + 1;
        if k * self.r % 2 == 1 {
            self.r = if self.r + 1 < k && rng.next_u64() & 1 == 0 {
                self.r + 1
            } else {
                self.r - 1
            };
        }
        let (mask, r) = (self.mask, self.r);
        let w = pick_min(bits(outside), rng, |w| deviation(self.g, mask | 1u64 << w, r));
        self.mask |= 1u64 << w;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample_gnp;
    use crate::search::max_induced_regular_exact;

    #[test]
    fn zero_budget_still_returns_a_witness() {
        for g in [Graph::empty(1), Graph::path(4), Graph::complete(5)] {
            let r = max_induced_regular_heuristic(&g, Seed(1), 0);
            assert!(r.size >= 1);
            assert!(!r.optimal);
        }
    }

    #[test]
    fn finds_the_whole_cycle() {
        let r = max_induced_regular_heuristic(&Graph::cycle(9), Seed(3), DEFAULT_ITERATION_BUDGET);
        assert_eq!((r.size, r.r), (9, 2));
    }

    #[test]
    fn deterministic_and_below_exact() {
        for t in 0..10 {
            let g = sample_gnp(12, 0.5, Seed(9).derive(t)).unwrap();
            let h = max_induced_regular_heuristic(&g, Seed(t), DEFAULT_ITERATION_BUDGET);
            assert_eq!(h, max_induced_regular_heuristic(&g, Seed(t), DEFAULT_ITERATION_BUDGET));
            let e = max_induced_regular_exact(&g, u64::MAX);
            assert!(h.size <= e.size);
        }
    }
}
