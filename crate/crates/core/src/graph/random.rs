//! Seeded randomness.
//!
//! Every random stream in the crate is a ChaCha20 generator whose 256-bit
//! key is the SplitMix64 expansion of a 64-bit [`Seed`]. Per-trial streams
//! use [`Seed::derive`], so results never depend on thread scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

pub type GraphRng = ChaCha20Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Seed {
    /// Seed for stream `index` under this master seed.
    pub fn derive(self, index: u64) -> Seed {
        let mut s = self.0 ^ index.wrapping_mul(GOLDEN_GAMMA).rotate_left(17);
        splitmix64(&mut s);
        Seed(splitmix64(&mut s))
    }

    pub fn rng(self) -> GraphRng {
        let mut state = self.0;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha20Rng::from_seed(key)
    }
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
#[inline]
pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..bound` by masked rejection.
pub(crate) fn below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0);
    if bound == 1 {
        return 0;
    }
    let mask = u64::MAX >> (bound - 1).leading_zeros();
    loop {
        let x = rng.next_u64() & mask;
        if x < bound {
            return x;
        }
    }
}

/// Samples G(n, p). Pairs `(u, v)`, `u < v`, consume one draw each in
/// lexicographic order; the pair is an edge iff the draw is below `p`.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("edge probability {p} outside [0, 1]")));
    }
    if n > super::MAX_VERTICES {
        return Err(Error::domain(format!(
            "graph order {n} exceeds the {}-vertex cap",
            super::MAX_VERTICES
        )));
    }
    let mut rng = seed.rng();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if unit_f64(&mut rng) < p {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
