use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::counter::{choice_weight, for_each_choice, groups, successor, DegreeCounter};
use super::{BigCount, ExactProbability};
use crate::error::{Error, Result};
use crate::graph::is_graphical;
use crate::math::binomial_u64;

/// A core degree vector `(d_1, ..., d_i)` inside a graph on `k` vertices.
///
/// The count attached to it is the number of graphs on `0..k` whose first
/// `i` vertices are pairwise non-adjacent, where core vertex `j` has degree
/// `d - d_j` and every other vertex has degree `d = (k - 1) / 2`. When the
/// core vector is the degree sequence of a graph `H` on `0..i`, this is the
/// number of `d`-regular graphs `G` with `G[0..i] = H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstrainedProfile {
    k: usize,
    core: Vec<u32>,
}

impl ConstrainedProfile {
    pub fn new(k: usize, core: Vec<u32>) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "constrained counts need odd k so that (k-1)/2 is an integer; got k = {k}"
            )));
        }
        let i = core.len();
        if i > k {
            return Err(Error::domain(format!("core length {i} exceeds k = {k}")));
        }
        if let Some(&bad) = core.iter().find(|&&d| d as usize + 1 > i) {
            return Err(Error::domain(format!(
                "core entry {bad} outside [0, {}] for a core of length {i}",
                i.saturating_sub(1)
            )));
        }
        Ok(ConstrainedProfile { k, core })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Core length `i`.
    pub fn i(&self) -> usize {
        self.core.len()
    }

    pub fn core(&self) -> &[u32] {
        &self.core
    }

    /// `d = (k - 1) / 2`.
    pub fn half_degree(&self) -> u32 {
        ((self.k - 1) / 2) as u32
    }

    pub fn has_even_sum(&self) -> bool {
        self.core.iter().map(|&d| d as u64).sum::<u64>() % 2 == 0
    }

    /// Entrywise `(i - 1) - d_j`: the degree sequence of the complement
    /// of any realisation of the core.
    pub fn complement(&self) -> ConstrainedProfile {
        let top = self.i().saturating_sub(1) as u32;
        ConstrainedProfile {
            k: self.k,
            core: self.core.iter().map(|&d| top - d).collect(),
        }
    }
}

/// Constrained counter sharing one degree-sequence table across queries.
#[derive(Debug, Default)]
pub struct ConstrainedCounter {
    base: DegreeCounter,
    /// Keyed by (remaining core needs, free residual state).
    partial: HashMap<(Vec<u8>, Vec<u8>), BigUint>,
}

impl ConstrainedCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn degree_counter(&mut self) -> &mut DegreeCounter {
        &mut self.base
    }

    pub fn count(&mut self, profile: &ConstrainedProfile) -> BigUint {
        if !profile.has_even_sum() {
            return BigUint::zero();
        }
        let d = profile.half_degree();
        if profile.core.iter().any(|&dj| dj > d) {
            return BigUint::zero();
        }
        // core vertices only connect outside the core; eliminate them first
        let mut needs: Vec<u8> = profile.core.iter().map(|&dj| (d - dj) as u8).collect();
        needs.sort_unstable_by(|a, b| b.cmp(a));
        let free = vec![d as u8; profile.k - profile.i()];
        let free: Vec<u8> = free.into_iter().filter(|&x| x > 0).collect();
        needs.retain(|&x| x > 0);
        self.eliminate(&needs, free)
    }

    fn eliminate(&mut self, needs: &[u8], free: Vec<u8>) -> BigUint {
        let Some((&need, rest)) = needs.split_first() else {
            return self.base.count_state(&free);
        };
        let key = (needs.to_vec(), free);
        if let Some(hit) = self.partial.get(&key) {
            return hit.clone();
        }
        let gs = groups(&key.1);
        let mut total = BigUint::zero();
        for_each_choice(&gs, need as usize, &mut |take| {
            let coef = choice_weight(&gs, take);
            let next: Vec<u8> = successor(&gs, take);
            let sub = self.eliminate(rest, next);
            if !sub.is_zero() {
                total += sub * coef;
            }
        });
        self.partial.insert(key, total.clone());
        total
    }
}

/// Exact constrained count for one profile.
pub fn count_constrained(profile: &ConstrainedProfile) -> BigCount {
    BigCount(ConstrainedCounter::new().count(profile))
}

/// All non-decreasing core vectors of length `i` with entries in
/// `lo..=hi`, even sum, and graphical. Permuting a core vector permutes the
/// core vertices, so these representatives cover the whole class.
pub fn graphical_cores(i: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(i: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == i {
            if is_graphical(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            rec(i, lo, hi, cur, out);
            cur.pop();
        }
    }
    if lo <= hi || i == 0 {
        rec(i, lo, hi, &mut cur, &mut out);
    }
    out
}

/// Maximum conditional regularity probability given the first `i` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PkiResult {
    pub k: usize,
    pub i: usize,
    pub probability: ExactProbability,
    /// First maximiser in lexicographic order (non-decreasing form).
    pub argmax: Vec<u32>,
    /// Every maximising core vector (non-decreasing form).
    pub maximizers: Vec<Vec<u32>>,
    /// Number of graphical core vectors examined.
    pub candidates: usize,
}

/// Exact p_{k,i}: the largest probability that G(k, 1/2) is
/// `(k-1)/2`-regular conditioned on the graph spanned by its first `i`
/// vertices. The conditional probability given `G[0..i] = H` is
/// `N(deg H) / 2^(C(k,2) - C(i,2))`, so the maximum runs over graphical
/// core vectors instead of over graphs `H`.
pub fn exact_pki(k: usize, i: usize) -> Result<PkiResult> {
    exact_pki_with(&mut ConstrainedCounter::new(), k, i)
}

pub fn exact_pki_with(counter: &mut ConstrainedCounter, k: usize, i: usize) -> Result<PkiResult> {
    if k.is_multiple_of(2) {
        return Err(Error::domain(format!("p_(k,i) is defined for odd k; got k = {k}")));
    }
    if i < 2 || i + 1 > k {
        return Err(Error::domain(format!("need 2 <= i <= k-1; got i = {i}, k = {k}")));
    }
    super::check_pki_budget(k)?;
    let d = ((k - 1) / 2) as u32;
    // core vertex j needs d - d_j >= 0 neighbours among the k - i others
    let lo = d.saturating_sub((k - i) as u32);
    let hi = d.min(i as u32 - 1);
    let cores = graphical_cores(i, lo, hi);
    let mut best = BigUint::zero();
    let mut maximizers: Vec<Vec<u32>> = Vec::new();
    for core in &cores {
        let profile = ConstrainedProfile::new(k, core.clone())?;
        let n = counter.count(&profile);
        if n > best {
            best = n;
            maximizers.clear();
            maximizers.push(core.clone());
        } else if n == best {
            maximizers.push(core.clone());
        }
    }
    let exponent = binomial_u64(k as u64, 2) - binomial_u64(i as u64, 2);
    Ok(PkiResult {
        k,
        i,
        probability: ExactProbability::new(BigCount(best), exponent as u32),
        argmax: maximizers[0].clone(),
        maximizers,
        candidates: cores.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize, core: &[u32]) -> u64 {
        let p = ConstrainedProfile::new(k, core.to_vec()).unwrap();
        u64::try_from(count_constrained(&p).0).unwrap()
    }

    #[test]
    fn constrained_examples() {
        assert_eq!(n(5, &[0]), 12);
        assert_eq!(n(5, &[1, 1]), 6);
        assert_eq!(n(5, &[0, 0]), 6);
        assert_eq!(n(5, &[0, 1]), 0);
        assert_eq!(n(5, &[]), 12);
    }

    #[test]
    fn profile_validation() {
        assert!(ConstrainedProfile::new(6, vec![0]).is_err());
        assert!(ConstrainedProfile::new(5, vec![2, 0]).is_err());
        assert!(ConstrainedProfile::new(3, vec![0, 0, 0, 0]).is_err());
        let p = ConstrainedProfile::new(5, vec![0, 1]).unwrap();
        assert!(!p.has_even_sum());
        assert_eq!(p.complement().core(), &[1, 0]);
    }

    #[test]
    fn pki_small() {
        let r = exact_pki(5, 2).unwrap();
        assert_eq!(r.probability.to_string(), "6/2^9");
        assert_eq!(r.maximizers, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(r.argmax, vec![0, 0]);
        assert!(exact_pki(5, 1).is_err());
        assert!(exact_pki(5, 5).is_err());
        assert!(exact_pki(6, 2).is_err());
        assert!(matches!(exact_pki(19, 2), Err(Error::Budget(_))));
    }

    #[test]
    fn cores_enumeration() {
        assert_eq!(graphical_cores(2, 0, 1), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(
            graphical_cores(3, 0, 2),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 1, 2], vec![2, 2, 2]]
        );
    }
}
