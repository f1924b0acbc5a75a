use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;

use super::counter::{canonical, for_each_choice, DegreeCounter};
use super::{check_exact_budget, pk_degree};
use crate::error::{Error, Result};
use crate::graph::{Graph, Seed, MAX_VERTICES};
use crate::math::binomial_u64;

/// Exact-uniform sampler over labeled realisations of a degree sequence.
///
/// Realisations are ranked by the same elimination recursion that
/// [`DegreeCounter`] uses: the unprocessed vertex with the largest residual
/// degree (smallest label on ties) picks its neighbours; blocks of ranks
/// correspond to how many neighbours come from each residual-degree class,
/// and inside a block the rank is split into a lexicographic combination
/// index per class and the rank of the remaining subproblem.
#[derive(Debug)]
pub struct RealizationSampler {
    degrees: Vec<u32>,
    total: BigUint,
    counter: DegreeCounter,
}

impl RealizationSampler {
    pub fn new(degrees: &[u32]) -> Result<Self> {
        if degrees.len() > MAX_VERTICES {
            return Err(Error::domain(format!(
                "{} vertices exceed the {MAX_VERTICES}-vertex cap",
                degrees.len()
            )));
        }
        let mut counter = DegreeCounter::new();
        let total = counter.count(degrees);
        if total.is_zero() {
            let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
            let reason = if sum % 2 == 1 {
                format!("degree sum {sum} is odd")
            } else {
                "the sequence is not graphical".to_string()
            };
            return Err(Error::domain(format!("no graph realises {degrees:?}: {reason}")));
        }
        Ok(RealizationSampler {
            degrees: degrees.to_vec(),
            total,
            counter,
        })
    }

    /// Number of labeled realisations.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Draws one realisation. Ranks use ceil(log2(total)) random bits per
    /// attempt with rejection above the total.
    pub fn sample(&mut self, rng: &mut impl RngCore) -> Graph {
        let rank = uniform_below(rng, &self.total);
        self.unrank(&rank)
    }

    /// The realisation with the given rank, `0 <= rank < total`.
    pub fn unrank(&mut self, rank: &BigUint) -> Graph {
        assert!(rank < &self.total, "rank out of range");
        let n = self.degrees.len();
        let mut residual = self.degrees.clone();
        let mut done = vec![false; n];
        let mut g = Graph::empty(n);
        let mut rank = rank.clone();

        while let Some(v) = (0..n)
            .filter(|&u| !done[u] && residual[u] > 0)
            .max_by(|&a, &b| residual[a].cmp(&residual[b]).then(b.cmp(&a)))
        {
            done[v] = true;
            let r = residual[v] as usize;
            // classes of candidate neighbours, residual descending, labels ascending
            let mut classes: Vec<(u8, Vec<usize>)> = Vec::new();
            let mut cands: Vec<usize> = (0..n).filter(|&u| !done[u] && residual[u] > 0).collect();
            cands.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
            for u in cands {
                let val = residual[u] as u8;
                match classes.last_mut() {
                    Some((cv, members)) if *cv == val => members.push(u),
                    _ => classes.push((val, vec![u])),
                }
            }
            let gs: Vec<(u8, usize)> = classes.iter().map(|(v, m)| (*v, m.len())).collect();

            let mut choices: Vec<Vec<usize>> = Vec::new();
            for_each_choice(&gs, r, &mut |take| choices.push(take.to_vec()));

            let mut picked = None;
            for take in choices {
                let weight: u64 = gs
                    .iter()
                    .zip(&take)
                    .map(|(&(_, c), &a)| binomial_u64(c as u64, a as u64))
                    .product();
                let next = canonical(gs.iter().zip(&take).flat_map(|(&(val, c), &a)| {
                    std::iter::repeat_n(val - 1, a).chain(std::iter::repeat_n(val, c - a))
                }));
                let sub = self.counter.count_state(&next);
                let block = &sub * weight;
                if rank < block {
                    let combo = (&rank / &sub).to_u64().expect("combination index fits u64");
                    rank %= &sub;
                    picked = Some((take, combo));
                    break;
                }
                rank -= block;
            }
            let (take, mut combo) = picked.expect("rank lies inside some block");
            for ((_, members), &a) in classes.iter().zip(&take) {
                let radix = binomial_u64(members.len() as u64, a as u64);
                let idx = combo % radix;
                combo /= radix;
                for pos in unrank_combination(members.len(), a, idx) {
                    let u = members[pos];
                    g.add_edge(v, u);
                    residual[u] -= 1;
                }
            }
            residual[v] = 0;
        }
        debug_assert!(rank.is_zero());
        g
    }
}

/// The `idx`-th `a`-subset of `0..c` in lexicographic order.
fn unrank_combination(c: usize, a: usize, mut idx: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(a);
    let mut left = a;
    for p in 0..c {
        if left == 0 {
            break;
        }
        let with_p = binomial_u64((c - p - 1) as u64, (left - 1) as u64);
        if idx < with_p {
            out.push(p);
            left -= 1;
        } else {
            idx -= with_p;
        }
    }
    debug_assert_eq!(out.len(), a);
    out
}

/// Uniform integer in `0..bound` by bit-masked rejection.
fn uniform_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    let max = bound - BigUint::one();
    let bits = max.bits();
    if bits == 0 {
        return BigUint::zero();
    }
    let words = bits.div_ceil(64) as usize;
    let mask = (BigUint::one() << bits) - BigUint::one();
    loop {
        let mut digits = Vec::with_capacity(2 * words);
        for _ in 0..words {
            let w = rng.next_u64();
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        let x = BigUint::new(digits) & &mask;
        if &x < bound {
            return x;
        }
    }
}

/// `count` independent exact-uniform `floor((k-1)/2)`-regular graphs on
/// `k` vertices.
pub fn sample_regular_exact(k: usize, seed: Seed, count: usize) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::domain("need k >= 1"));
    }
    check_exact_budget(k)?;
    let r = pk_degree(k);
    let mut sampler = RealizationSampler::new(&vec![r; k]).map_err(|_| {
        Error::domain(format!(
            "no {r}-regular graph on {k} vertices: the degree sum {} is odd",
            k as u64 * r as u64
        ))
    })?;
    let mut rng = seed.rng();
    Ok((0..count).map(|_| sampler.sample(&mut rng)).collect())
}
