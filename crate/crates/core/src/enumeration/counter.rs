use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::math::binomial_u64;

/// Counts labeled simple graphs with a prescribed degree sequence.
///
/// Vertex-elimination recursion: the vertex with the largest residual
/// degree `r` picks its `r` neighbours among the others; the residual
/// degrees of the chosen ones drop by one. Because the count only depends
/// on the multiset of residual degrees, states are stored sorted
/// (descending, zeros dropped) and vertices are grouped by residual value,
/// so a step enumerates how many neighbours to take from each group.
#[derive(Debug, Default)]
pub struct DegreeCounter {
    memo: HashMap<Vec<u8>, BigUint>,
}

impl DegreeCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoised states.
    pub fn table_size(&self) -> usize {
        self.memo.len()
    }

    /// Exact number of labeled graphs on `degrees.len()` vertices with
    /// these degrees; zero for odd sums and out-of-range entries.
    pub fn count(&mut self, degrees: &[u32]) -> BigUint {
        let n = degrees.len();
        if degrees.iter().any(|&d| d as usize >= n) {
            return BigUint::zero();
        }
        if degrees.iter().map(|&d| d as u64).sum::<u64>() % 2 == 1 {
            return BigUint::zero();
        }
        assert!(n <= u8::MAX as usize + 1, "degree sequence too long for the DP");
        let state = canonical(degrees.iter().map(|&d| d as u8));
        self.count_state(&state)
    }

    /// Count for a canonical state (sorted descending, all entries > 0).
    pub(crate) fn count_state(&mut self, state: &[u8]) -> BigUint {
        if state.is_empty() {
            return BigUint::one();
        }
        if let Some(hit) = self.memo.get(state) {
            return hit.clone();
        }
        let r = state[0] as usize;
        let rest = &state[1..];
        let mut total = BigUint::zero();
        if r <= rest.len() && state.iter().map(|&d| d as u32).sum::<u32>() % 2 == 0 {
            let gs = groups(rest);
            for_each_choice(&gs, r, &mut |take| {
                let coef = choice_weight(&gs, take);
                let next = successor(&gs, take);
                let sub = self.count_state(&next);
                if !sub.is_zero() {
                    total += sub * coef;
                }
            });
        }
        self.memo.insert(state.to_vec(), total.clone());
        total
    }
}

/// Sorted-descending, zero-free form of a residual degree multiset.
pub(crate) fn canonical(it: impl IntoIterator<Item = u8>) -> Vec<u8> {
    let mut v: Vec<u8> = it.into_iter().filter(|&d| d > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Run-length groups `(value, multiplicity)` of a descending state.
pub(crate) fn groups(state: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &d in state {
        match out.last_mut() {
            Some((v, c)) if *v == d => *c += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

/// Calls `f` with every vector `take` where `take[g] <= groups[g].1` and
/// the entries sum to `need`. Order: lexicographic in `take`.
pub(crate) fn for_each_choice(groups: &[(u8, usize)], need: usize, f: &mut impl FnMut(&[usize])) {
    let mut capacity = vec![0usize; groups.len() + 1];
    for g in (0..groups.len()).rev() {
        capacity[g] = capacity[g + 1] + groups[g].1;
    }
    if capacity[0] < need {
        return;
    }
    let mut take = vec![0usize; groups.len()];
    fn rec(
        g: usize,
        need: usize,
        groups: &[(u8, usize)],
        capacity: &[usize],
        take: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if g == groups.len() {
            if need == 0 {
                f(take);
            }
            return;
        }
        let lo = need.saturating_sub(capacity[g + 1]);
        let hi = need.min(groups[g].1);
        for a in lo..=hi {
            take[g] = a;
            rec(g + 1, need - a, groups, capacity, take, f);
        }
        take[g] = 0;
    }
    rec(0, need, groups, &capacity, &mut take, f);
}

/// Number of vertex subsets realising a per-group choice.
pub(crate) fn choice_weight(groups: &[(u8, usize)], take: &[usize]) -> u64 {
    groups
        .iter()
        .zip(take)
        .map(|(&(_, c), &a)| binomial_u64(c as u64, a as u64))
        .product()
}

/// State after decrementing `take[g]` members of each group.
pub(crate) fn successor(groups: &[(u8, usize)], take: &[usize]) -> Vec<u8> {
    let mut next = Vec::new();
    for (&(v, c), &a) in groups.iter().zip(take) {
        if v > 1 {
            next.extend(std::iter::repeat_n(v - 1, a));
        }
        next.extend(std::iter::repeat_n(v, c - a));
    }
    next.sort_unstable_by(|a, b| b.cmp(a));
    next
}
