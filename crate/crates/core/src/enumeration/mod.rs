//! Exact big-integer enumeration.

mod constrained;
mod counter;
pub mod oracle;
mod sampler;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::DegreeSequence;
use crate::math::{binomial_u64, ln_big};

pub use constrained::{
    count_constrained, exact_pki, exact_pki_with, graphical_cores, ConstrainedCounter,
    ConstrainedProfile, PkiResult,
};
pub use counter::DegreeCounter;
pub use sampler::{sample_regular_exact, RealizationSampler};

/// Largest k for which exact p_k and regular sampling are run.
pub const EXACT_K_LIMIT: usize = 21;

/// Largest k for exact p_{k,i}. The number of graphical core vectors grows
/// quickly with k; at k = 17 all rows together take a few seconds.
pub const EXACT_PKI_K_LIMIT: usize = 17;

pub(crate) fn check_exact_budget(k: usize) -> Result<()> {
    if k > EXACT_K_LIMIT {
        Err(Error::Budget(format!(
            "exact enumeration is limited to k <= {EXACT_K_LIMIT}; got k = {k} (use the asymptotic mode)"
        )))
    } else {
        Ok(())
    }
}

pub(crate) fn check_pki_budget(k: usize) -> Result<()> {
    if k > EXACT_PKI_K_LIMIT {
        Err(Error::Budget(format!(
            "exact p_(k,i) is limited to k <= {EXACT_PKI_K_LIMIT}; got k = {k} (use the lemma-bound mode)"
        )))
    } else {
        Ok(())
    }
}

/// An exact non-negative integer count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn ln(&self) -> f64 {
        ln_big(&self.0)
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// `numerator / 2^exponent`, kept unreduced so the exponent stays the
/// number of random pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactProbability {
    pub numerator: BigCount,
    pub exponent: u32,
}

impl ExactProbability {
    pub fn new(numerator: BigCount, exponent: u32) -> Self {
        ExactProbability { numerator, exponent }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Nearest-double view (within one ulp of the rational).
    pub fn to_f64(&self) -> f64 {
        let num = &self.numerator.0;
        let bits = num.bits();
        let (mantissa, mut exp) = if bits > 64 {
            let shift = bits - 64;
            ((num >> shift).to_f64().unwrap(), self.exponent as i64 - shift as i64)
        } else {
            (num.to_f64().unwrap(), self.exponent as i64)
        };
        let mut x = mantissa;
        while exp > 0 {
            let step = exp.min(1000);
            x *= 2f64.powi(-(step as i32));
            exp -= step;
        }
        while exp < 0 {
            let step = (-exp).min(1000);
            x *= 2f64.powi(step as i32);
            exp += step;
        }
        x
    }

    pub fn ln(&self) -> f64 {
        self.numerator.ln() - self.exponent as f64 * std::f64::consts::LN_2
    }

    /// ln(self / other) from the cross-multiplied numerators, so equal
    /// rationals give exactly 0. `NaN` if both are zero.
    pub fn ln_ratio(&self, other: &ExactProbability) -> f64 {
        let a = &self.numerator.0 << other.exponent;
        let b = &other.numerator.0 << self.exponent;
        if a == b && !a.is_zero() {
            return 0.0;
        }
        ln_big(&a) - ln_big(&b)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl Serialize for ExactProbability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactProbability", 2)?;
        st.serialize_field("rational", &self.to_string())?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

/// Exact count of labeled graphs with degree sequence `d`.
pub fn count_by_degree_sequence(d: &DegreeSequence) -> BigCount {
    BigCount(DegreeCounter::new().count(d.as_slice()))
}

/// The regularity degree used for p_k: `floor((k-1)/2)`.
pub fn pk_degree(k: usize) -> u32 {
    (k.saturating_sub(1) / 2) as u32
}

/// Exact probability that G(k, 1/2) is `floor((k-1)/2)`-regular.
pub fn exact_pk(k: usize) -> Result<ExactProbability> {
    exact_pk_with(&mut DegreeCounter::new(), k)
}

pub fn exact_pk_with(counter: &mut DegreeCounter, k: usize) -> Result<ExactProbability> {
    if k == 0 {
        return Err(Error::domain("p_k needs k >= 1"));
    }
    check_exact_budget(k)?;
    let count = counter.count(&vec![pk_degree(k); k]);
    Ok(ExactProbability::new(
        BigCount(count),
        binomial_u64(k as u64, 2) as u32,
    ))
}

/// How far the most likely degree sequence of G(k, 1/2) is above the
/// regular one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub k: usize,
    /// The most frequent degree sequence (non-decreasing form).
    pub argmax: Vec<u32>,
    pub max_count: BigCount,
    pub regular_count: BigCount,
    /// `max_count / regular_count`; `None` when no regular graph exists.
    pub ratio: Option<f64>,
}

/// Max over degree sequences of `G(d) / 2^C(k,2)`, divided by p_k.
/// Exhaustive over non-decreasing sequences, so keep k small.
pub fn degree_sequence_concentration(k: usize) -> Result<ConcentrationReport> {
    if k == 0 || k > 10 {
        return Err(Error::Budget(format!(
            "concentration scan enumerates all degree sequences; need 1 <= k <= 10, got {k}"
        )));
    }
    let mut counter = DegreeCounter::new();
    let mut best = BigUint::zero();
    let mut argmax = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        k: usize,
        cur: &mut Vec<u32>,
        counter: &mut DegreeCounter,
        best: &mut BigUint,
        argmax: &mut Vec<u32>,
    ) {
        if cur.len() == k {
            let c = counter.count(cur);
            if c > *best {
                *best = c;
                *argmax = cur.clone();
            }
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for v in start..k as u32 {
            cur.push(v);
            rec(k, cur, counter, best, argmax);
            cur.pop();
        }
    }
    rec(k, &mut cur, &mut counter, &mut best, &mut argmax);
    let regular = counter.count(&vec![pk_degree(k); k]);
    let ratio = (!regular.is_zero()).then(|| (ln_big(&best) - ln_big(&regular)).exp());
    Ok(ConcentrationReport {
        k,
        argmax,
        max_count: BigCount(best),
        regular_count: BigCount(regular),
        ratio,
    })
}
