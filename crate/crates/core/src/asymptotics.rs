//! Log-domain evaluators for the closed-form estimates.
//!
//! Every evaluator works with natural logarithms and only exponentiates at
//! the output boundary. Lower-order terms without explicit constants are
//! dropped from the point estimate; each result reports the size of the
//! quantity that drives the dropped term instead.
//!
//! Hypotheses of the form "o(sqrt k)" are gated by the proxy `k^0.49`
//! ([`DEFAULT_SQRT_PROXY`]); the `_with` variants take another exponent.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::enumeration::{check_exact_budget, exact_pk, ConstrainedProfile};
use crate::error::{Error, Result};
use crate::graph::{is_graphical, DegreeSequence};
use crate::math::{binomial_u64, ln_binomial, xlnx};

pub const DEFAULT_SQRT_PROXY: f64 = 0.49;

/// ln(sqrt(2) e^(1/4)), the limiting correction factor of the enumeration
/// formula when all degrees are within o(sqrt k) of the mean.
pub fn ln_sharp_constant() -> f64 {
    0.5 * LN_2 + 0.25
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Degrees within the proxy window: correction factor sqrt(2) e^(1/4).
    Sharp,
    /// Deviations too large: the factor is only O(1) and the estimate
    /// carries 1.
    Bounded,
    /// Deviations too large and density outside (1/3, 2/3).
    OutOfRange,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogEstimate {
    pub log_value: f64,
    pub lambda: f64,
    pub max_deviation: f64,
    pub regime: Regime,
    /// Whether lambda lies in (1/3, 2/3).
    pub lambda_in_range: bool,
    /// Size of the input that controls the dropped error term. Its meaning
    /// is documented on each evaluator.
    pub error_driver: f64,
}

impl LogEstimate {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Density parameter of the residual graph on the non-core vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lambda {
    pub lambda: f64,
    /// Mean number of core neighbours of a non-core vertex.
    pub d_bar: f64,
}

/// `lambda = (d - d_bar) / (k - i - 1)` with
/// `d_bar = (k - i)^-1 * sum_j (d - d_j)`.
pub fn lambda_of(profile: &ConstrainedProfile) -> Result<Lambda> {
    let (k, i) = (profile.k(), profile.i());
    if i + 1 >= k {
        return Err(Error::domain(format!(
            "lambda needs i < k - 1; got i = {i}, k = {k}"
        )));
    }
    let d = profile.half_degree() as f64;
    let spare: f64 = profile.core().iter().map(|&dj| d - dj as f64).sum();
    let d_bar = spare / (k - i) as f64;
    Ok(Lambda {
        lambda: (d - d_bar) / (k - i - 1) as f64,
        d_bar,
    })
}

/// Estimate of the number of labeled graphs with degree sequence `d`:
///
/// `f * (lambda^lambda (1-lambda)^(1-lambda))^C(k,2) * prod_j C(k-1, d_j)`
///
/// with `lambda = sum(d) / (k(k-1))`. `f = sqrt(2) e^(1/4)` in the sharp
/// regime and 1 otherwise. The error driver is the maximum deviation.
pub fn estimate_count(d: &DegreeSequence) -> Result<LogEstimate> {
    estimate_count_with(d, DEFAULT_SQRT_PROXY)
}

pub fn estimate_count_with(d: &DegreeSequence, proxy_exponent: f64) -> Result<LogEstimate> {
    let k = d.len();
    if k < 2 {
        return Err(Error::domain("the enumeration estimate needs at least two vertices"));
    }
    if d.sum() % 2 == 1 {
        return Err(Error::domain(format!("degree sum {} is odd", d.sum())));
    }
    if let Some(&bad) = d.as_slice().iter().find(|&&x| x as usize >= k) {
        return Err(Error::domain(format!("degree {bad} out of range for {k} vertices")));
    }
    let kf = k as f64;
    let lambda = d.sum() as f64 / (kf * (kf - 1.0));
    let max_deviation = d
        .as_slice()
        .iter()
        .map(|&x| (lambda * kf - x as f64).abs())
        .fold(0.0, f64::max);
    let lambda_in_range = lambda > 1.0 / 3.0 && lambda < 2.0 / 3.0;
    let regime = if max_deviation <= kf.powf(proxy_exponent) {
        Regime::Sharp
    } else if lambda_in_range {
        Regime::Bounded
    } else {
        Regime::OutOfRange
    };
    let ln_f = if regime == Regime::Sharp {
        ln_sharp_constant()
    } else {
        0.0
    };
    let pairs = binomial_u64(k as u64, 2) as f64;
    let binoms: f64 = d
        .as_slice()
        .iter()
        .map(|&x| ln_binomial(k as u64 - 1, x as u64))
        .sum();
    Ok(LogEstimate {
        log_value: ln_f + pairs * (xlnx(lambda) + xlnx(1.0 - lambda)) + binoms,
        lambda,
        max_deviation,
        regime,
        lambda_in_range,
        error_driver: max_deviation,
    })
}

/// ln of `(pi m / 2)^(-m/2)` for any `m >= 1`.
pub(crate) fn ln_pk_asymptotic(m: u64) -> f64 {
    let mf = m as f64;
    -0.5 * mf * (PI * mf / 2.0).ln()
}

/// `p_k ~ (sqrt(pi k / 2))^-k` with the `(1 + o(1))` inside the power
/// dropped. The neglected factor `(1 + o(1))^k` does not vanish: the exact
/// ratio tends to `sqrt(2) e^(1/2)`. The error driver is `k`.
pub fn estimate_pk(k: usize) -> Result<LogEstimate> {
    if k < 3 {
        return Err(Error::domain(format!("the p_k estimate needs k >= 3; got {k}")));
    }
    Ok(LogEstimate {
        log_value: ln_pk_asymptotic(k as u64),
        lambda: 0.5,
        max_deviation: if k % 2 == 1 { 0.5 } else { 1.0 },
        regime: Regime::Sharp,
        lambda_in_range: true,
        error_driver: k as f64,
    })
}

/// The two bounds on `p_{k,i}`, constants excluded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PkiBounds {
    /// `ln[C(k-i, floor((k-i)/2))^i 2^(-(k-i) i) p_(k-i)]`, a bound on
    /// `p_{k,i}` itself.
    pub log_a: f64,
    /// `k ln(k / (k-i))`, a bound on `ln(p_{k,i} / p_k)`.
    pub log_b: f64,
    /// Whether `log_a` used an exact, non-zero `p_(k-i)`.
    pub exact_tail_pk: bool,
}

pub fn bound_pki(k: usize, i: usize) -> Result<PkiBounds> {
    if k.is_multiple_of(2) {
        return Err(Error::domain(format!("p_(k,i) bounds need odd k; got {k}")));
    }
    if i < 2 || i + 1 > k {
        return Err(Error::domain(format!("need 2 <= i <= k-1; got i = {i}, k = {k}")));
    }
    let m = (k - i) as u64;
    let (ln_tail, exact) = match check_exact_budget(m as usize).and_then(|_| exact_pk(m as usize)) {
        Ok(p) if !p.is_zero() => (p.ln(), true),
        // p_m = 0 for m = 3 mod 4; fall back to the smooth estimate there
        _ => (ln_pk_asymptotic(m), false),
    };
    let i_f = i as f64;
    let log_a = i_f * ln_binomial(m, m / 2) - (m as f64) * i_f * LN_2 + ln_tail;
    let log_b = k as f64 * (k as f64 / m as f64).ln();
    Ok(PkiBounds {
        log_a,
        log_b,
        exact_tail_pk: exact,
    })
}

/// Core vector `d`, shift `s` and the derived `d_hat`, `delta` of the
/// ratio formula for `N(d) / N(d - s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSpec {
    k: usize,
    d: Vec<u32>,
    s: Vec<i64>,
}

impl RatioSpec {
    /// Checks that `d` and `d - s` are both even-sum vectors with entries
    /// in `[0, i-1]`, and that `sum |s_j| <= k^(3/4)`.
    pub fn new(k: usize, d: Vec<u32>, s: Vec<i64>) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::domain(format!("the ratio formula needs odd k; got {k}")));
        }
        let i = d.len();
        if s.len() != i {
            return Err(Error::domain(format!(
                "core has {i} entries but the shift has {}",
                s.len()
            )));
        }
        if i + 1 > k {
            return Err(Error::domain(format!("core length {i} too large for k = {k}")));
        }
        let in_core_range = |v: i64| v >= 0 && v < i as i64;
        let d_sum: i64 = d.iter().map(|&x| x as i64).sum();
        if d.iter().any(|&x| !in_core_range(x as i64)) || d_sum % 2 != 0 {
            return Err(Error::domain(format!(
                "core {d:?} is not an even-sum vector with entries in [0, {}]",
                i.saturating_sub(1)
            )));
        }
        let shifted: Vec<i64> = d.iter().zip(&s).map(|(&x, &y)| x as i64 - y).collect();
        if shifted.iter().any(|&x| !in_core_range(x)) || shifted.iter().sum::<i64>() % 2 != 0 {
            return Err(Error::domain(format!(
                "shifted core {shifted:?} is not an even-sum vector with entries in [0, {}]",
                i.saturating_sub(1)
            )));
        }
        let l1: i64 = s.iter().map(|x| x.abs()).sum();
        let window = (k as f64).powf(0.75);
        if l1 as f64 > window {
            return Err(Error::domain(format!(
                "sum |s_j| = {l1} exceeds the validity window k^(3/4) = {window:.3}"
            )));
        }
        Ok(RatioSpec { k, d, s })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn i(&self) -> usize {
        self.d.len()
    }

    pub fn core(&self) -> &[u32] {
        &self.d
    }

    pub fn shift(&self) -> &[i64] {
        &self.s
    }

    /// `d - s`.
    pub fn shifted_core(&self) -> Vec<u32> {
        self.d
            .iter()
            .zip(&self.s)
            .map(|(&x, &y)| (x as i64 - y) as u32)
            .collect()
    }

    /// `(k - i) / 2`.
    pub fn d_hat(&self) -> f64 {
        (self.k - self.i()) as f64 / 2.0
    }

    /// `d_j - (i - 1) / 2`.
    pub fn deltas(&self) -> Vec<f64> {
        let mid = (self.i() as f64 - 1.0) / 2.0;
        self.d.iter().map(|&x| x as f64 - mid).collect()
    }
}

/// `(1 / d_hat) * sum_j (-2 delta_j s_j + s_j^2)`.
pub fn log_ratio_estimate(spec: &RatioSpec) -> f64 {
    let sum: f64 = spec
        .deltas()
        .iter()
        .zip(spec.shift())
        .map(|(&delta, &s)| {
            let s = s as f64;
            -2.0 * delta * s + s * s
        })
        .sum();
    sum / spec.d_hat()
}

/// Estimate of `N(d) / N(d - s)`.
pub fn ratio_estimate(spec: &RatioSpec) -> f64 {
    log_ratio_estimate(spec).exp()
}

/// Probability that a uniform `(k-1)/2`-regular graph on `0..k` has
/// `G[0..i] = H`, for `H` with degrees `h_degrees`:
///
/// `2^(-C(i,2)) exp(-(2 / (k - i)) sum_j delta_j^2)`,
/// `delta_j = d_j - (i - 1) / 2`.
///
/// The factor `exp(o(k^(-3/4)) sum_j |delta_j|)` is dropped; the error
/// driver is `sum_j |delta_j|`.
pub fn prob_induced(k: usize, h_degrees: &[u32]) -> Result<LogEstimate> {
    prob_induced_with(k, h_degrees, DEFAULT_SQRT_PROXY)
}

pub fn prob_induced_with(k: usize, h_degrees: &[u32], proxy_exponent: f64) -> Result<LogEstimate> {
    if k.is_multiple_of(2) {
        return Err(Error::domain(format!("needs odd k; got {k}")));
    }
    let i = h_degrees.len();
    if i == 0 {
        return Err(Error::domain("H needs at least one vertex"));
    }
    let gate = (k as f64).powf(proxy_exponent);
    if i as f64 > gate {
        return Err(Error::domain(format!(
            "i = {i} exceeds the o(sqrt k) proxy k^{proxy_exponent} = {gate:.3}"
        )));
    }
    if !is_graphical(h_degrees) {
        return Err(Error::domain(format!("{h_degrees:?} is not graphical")));
    }
    let mid = (i as f64 - 1.0) / 2.0;
    let deltas: Vec<f64> = h_degrees.iter().map(|&x| x as f64 - mid).collect();
    let sq: f64 = deltas.iter().map(|x| x * x).sum();
    let abs_sum: f64 = deltas.iter().map(|x| x.abs()).sum();
    let lambda = lambda_of(&ConstrainedProfile::new(k, h_degrees.to_vec())?)?;
    Ok(LogEstimate {
        log_value: -(binomial_u64(i as u64, 2) as f64) * LN_2 - 2.0 / (k - i) as f64 * sq,
        lambda: lambda.lambda,
        max_deviation: deltas.iter().map(|x| x.abs()).fold(0.0, f64::max),
        regime: Regime::Sharp,
        lambda_in_range: lambda.lambda > 1.0 / 3.0 && lambda.lambda < 2.0 / 3.0,
        error_driver: abs_sum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BinomialOffset {
    pub log_value: f64,
    /// `|x|^3 / a^2`, the size of the dropped term.
    pub cubic_driver: f64,
}

/// `ln C(a, floor(a/2)) - 2 x^2 / a`, approximating `ln C(a, a/2 + x)`.
pub fn log_central_binomial_offset(a: u64, x: f64) -> Result<BinomialOffset> {
    if a == 0 {
        return Err(Error::domain("a must be positive"));
    }
    let af = a as f64;
    if x.is_nan() || x.abs() > af.sqrt() {
        return Err(Error::domain(format!("|x| = {} exceeds sqrt(a) = {}", x.abs(), af.sqrt())));
    }
    Ok(BinomialOffset {
        log_value: ln_binomial(a, a / 2) - 2.0 * x * x / af,
        cubic_driver: x.abs().powi(3) / (af * af),
    })
}
