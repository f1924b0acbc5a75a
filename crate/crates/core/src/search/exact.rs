use super::{greedy_incumbent, SearchResult};
use crate::graph::{bits, full_mask, Graph};

/// Default node budget for one exact search.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Exact search over targets `(k, r)`: `k` from `n` down to the size of a
/// greedy incumbent, `r` ascending with `k r` even. For each target a
/// depth-first search decides vertices from the highest label down,
/// excluding before including, so the first hit has the smallest bitmask.
///
/// When the budget runs out the incumbent comes back with
/// `optimal = false`.
pub fn max_induced_regular_exact(g: &Graph, node_budget: u64) -> SearchResult {
    let n = g.order();
    let (inc_mask, inc_r) = greedy_incumbent(g);
    let floor = inc_mask.count_ones() as usize;
    let mut search = Search {
        g,
        k: 0,
        r: 0,
        nodes: 0,
        budget: node_budget,
    };
    for k in (floor.max(1)..=n).rev() {
        for r in (0..k).filter(|r| k * r % 2 == 0) {
            search.k = k;
            search.r = r;
            match search.run(0, full_mask(n)) {
                Outcome::Found(mask) => {
                    return SearchResult::verified(g, mask, r, true, search.nodes);
                }
                Outcome::Exhausted => {
                    return SearchResult::verified(g, inc_mask, inc_r, false, search.nodes);
                }
                Outcome::None => {}
            }
        }
    }
    // only the null graph gets here
    SearchResult::verified(g, inc_mask, inc_r, true, search.nodes)
}

enum Outcome {
    Found(u64),
    None,
    Exhausted,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    r: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `chosen`: included vertices; `pool`: undecided vertices that may
    /// still be included.
    fn run(&mut self, chosen: u64, pool: u64) -> Outcome {
        if self.nodes >= self.budget {
            return Outcome::Exhausted;
        }
        self.nodes += 1;
        let (k, r) = (self.k, self.r);
        let size = chosen.count_ones() as usize;
        if size == k {
            return Outcome::Found(chosen);
        }
        let missing = k - size;
        if (pool.count_ones() as usize) < missing {
            return Outcome::None;
        }
        // every chosen vertex must be able to end with exactly r chosen
        // neighbours out of the k - 1 others
        for u in bits(chosen) {
            let row = self.g.neighbors(u);
            let inside = (row & chosen).count_ones() as usize;
            let avail = (row & pool).count_ones() as usize;
            let non_inside = size - 1 - inside;
            if inside + avail.min(missing) < r {
                return Outcome::None;
            }
            if non_inside + missing.saturating_sub(avail) > k - 1 - r {
                return Outcome::None;
            }
        }
        let v = 63 - pool.leading_zeros() as usize;
        let rest = pool & !(1u64 << v);
        match self.run(chosen, rest) {
            Outcome::None => {}
            other => return other,
        }
        let with_v = chosen | 1u64 << v;
        let filtered = self.admissible(with_v, rest);
        self.run(with_v, filtered)
    }

    /// Pool vertices that can still join without breaking a degree cap.
    fn admissible(&self, chosen: u64, pool: u64) -> u64 {
        let size = chosen.count_ones() as usize;
        let (k, r) = (self.k, self.r);
        let mut keep = pool;
        for u in bits(chosen) {
            let row = self.g.neighbors(u);
            let inside = (row & chosen).count_ones() as usize;
            // u saturated: no more neighbours of u may join
            if inside == r {
                keep &= !row;
            }
            // u out of non-neighbours: only neighbours of u may join
            if size - 1 - inside == k - 1 - r {
                keep &= row;
            }
        }
        for w in bits(keep) {
            let row = self.g.neighbors(w);
            let inside = (row & chosen).count_ones() as usize;
            if inside > r || size - inside > k - 1 - r {
                keep &= !(1u64 << w);
            }
        }
        keep
    }
}
