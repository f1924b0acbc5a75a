//! First and second moment of the number of regular k-subsets in G(n, 1/2),
//! and the union-bound tail over large k.
//!
//! X counts k-subsets of `0..n` that span a `(k-1)/2`-regular graph.
//! `E[X] = C(n,k) p_k` and
//!
//! `Var[X] / E[X]^2 <= 1/E[X] + sum_(i=2)^(k-1) g(i)`,
//! `g(i) = [C(k,i) C(n-k,k-i) / C(n,k)] p_(k,i) / p_k`.

use std::f64::consts::{E, LN_10};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{bound_pki, ln_pk_asymptotic};
use crate::enumeration::{
    check_exact_budget, check_pki_budget, exact_pk, exact_pki_with, ConstrainedCounter,
};
use crate::error::{Error, Result};
use crate::math::{ln_binomial, ln_expm1, log_add_exp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PkMode {
    Exact,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PkiMode {
    Exact,
    LemmaBound,
}

/// `ln E[X] = ln C(n,k) + ln p_k`; `-inf` when `p_k = 0`.
///
/// The asymptotic mode uses the smooth estimate for `k >= 3` and the exact
/// value below that (`p_1 = 1`, `p_2 = 1/2`).
pub fn log_expected_count(n: u64, k: u64, mode: PkMode) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::domain(format!("need 1 <= k <= n; got n = {n}, k = {k}")));
    }
    let ln_pk = match mode {
        PkMode::Asymptotic if k >= 3 => ln_pk_asymptotic(k),
        _ => {
            let k = usize::try_from(k).map_err(|_| Error::domain("k too large"))?;
            check_exact_budget(k)?;
            exact_pk(k)?.ln()
        }
    };
    Ok(ln_binomial(n, k) + ln_pk)
}

/// Geometric mean of the fences `max(k^2/n, 1)` and `sqrt k`, rounded up
/// and clamped to `[2, k-1]`.
///
/// Errors when the fences cross, and when no integer of `[2, k-1]` lies
/// strictly between them after rounding (only happens for small k).
pub fn choose_threshold(n: u64, k: u64) -> Result<u64> {
    if n == 0 || k < 3 {
        return Err(Error::domain(format!("need n >= 1 and k >= 3; got n = {n}, k = {k}")));
    }
    let lower = (k as f64).powi(2) / n as f64;
    let upper = (k as f64).sqrt();
    if lower >= upper {
        return Err(Error::domain(format!(
            "outside the regime: k^2/n = {lower} >= sqrt(k) = {upper}"
        )));
    }
    let t = ((lower.max(1.0) * upper).sqrt().ceil() as u64).clamp(2, k - 1);
    if (t as f64) <= lower || (t as f64) >= upper {
        return Err(Error::domain(format!(
            "no integer threshold in [2, {}] lies strictly between {lower} and {upper}",
            k - 1
        )));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    /// `2 <= i <= t`: the ratio `p_(k,i)/p_k` is `1 + o(1)`.
    SmallI,
    /// `i <= floor(k/2)`.
    Case1,
    /// Between the other two.
    Case2,
    /// `i >= ceil(k - k/ln k)`.
    Case3,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::SmallI => "small-i",
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3 => "case3",
        }
    }
}

/// First `i` of the third case.
pub fn case3_start(k: u64) -> u64 {
    let kf = k as f64;
    (kf - kf / kf.ln()).ceil() as u64
}

/// Label for row `i`. The band takes precedence, then the first case.
pub fn case_label(k: u64, i: u64, t: Option<u64>) -> CaseLabel {
    if t.is_some_and(|t| i <= t) {
        CaseLabel::SmallI
    } else if i <= k / 2 {
        CaseLabel::Case1
    } else if i >= case3_start(k) {
        CaseLabel::Case3
    } else {
        CaseLabel::Case2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioSource {
    /// Exact `p_(k,i) / p_k`.
    Exact,
    /// `(k / (k-i))^k`, constant set to 1.
    LemmaB,
    /// `p_(k,i) <= 1`, so the ratio is at most `1/p_k`.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub i: u64,
    pub case: CaseLabel,
    pub source: RatioSource,
    /// `ln[C(k,i) C(n-k,k-i) / C(n,k)]`.
    pub log_binomial_ratio: f64,
    /// `ln(p_(k,i)/p_k)` or the bound standing in for it.
    pub log_pki_ratio: f64,
    pub log_g: f64,
    /// `ln[binomial ratio * (p_(k,i)/p_k - 1)]`, `-inf` when the ratio is
    /// at most 1.
    pub log_covariance: f64,
    /// What this row adds to the total: `log_g` outside the band, the
    /// excess over 1 inside it.
    pub log_contribution: f64,
    /// Row within a factor 10 of 1 while resting on a bound with an
    /// unspecified constant.
    pub constant_sensitive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: u64,
    pub k: u64,
    pub mode: PkiMode,
    pub log_ex: f64,
    pub t: Option<u64>,
    pub rows: Vec<MomentRow>,
    /// `ln(1/E[X] + sum of contributions)`.
    pub log_variance_ratio_bound: f64,
    /// `ln sum_i g(i)` with no band treatment.
    pub log_sum_g: f64,
}

pub const CSV_HEADER: &str = "i,case,source,log_binomial_ratio,log_pki_ratio,log_g,log_covariance,log_contribution,constant_sensitive";

impl MomentReport {
    /// One line per row under [`CSV_HEADER`]; floats use 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let source = match r.source {
                RatioSource::Exact => "exact",
                RatioSource::LemmaB => "lemma-b",
                RatioSource::Trivial => "trivial",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.i,
                r.case.as_str(),
                source,
                fmt_float(r.log_binomial_ratio),
                fmt_float(r.log_pki_ratio),
                fmt_float(r.log_g),
                fmt_float(r.log_covariance),
                fmt_float(r.log_contribution),
                r.constant_sensitive
            );
        }
        out
    }
}

/// Locale-free float cell with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `ln[C(k,i) C(n-k,k-i) / C(n,k)]`.
pub fn log_binomial_ratio(n: u64, k: u64, i: u64) -> f64 {
    if k - i > n - k {
        return f64::NEG_INFINITY;
    }
    ln_binomial(k, i) + ln_binomial(n - k, k - i) - ln_binomial(n, k)
}

/// `i ln(3 e^2 k^2 / (i n))`.
pub fn case1_envelope(n: u64, k: u64, i: u64) -> f64 {
    let (n, k, i) = (n as f64, k as f64, i as f64);
    i * (3.0 * E * E * k * k / (i * n)).ln()
}

/// Excess `p_(k,i)/p_k - 1` inside the band, from the conditional
/// probability formula: for each core vertex, the largest value of
/// `-2 delta^2/(k-i) + k^(-3/4) |delta|` over its possible centred degrees,
/// summed and exponentiated. The unquantified `o(k^(-3/4))` factor is
/// taken at size `k^(-3/4)`.
pub fn band_excess_estimate(k: u64, i: u64) -> f64 {
    let eps = (k as f64).powf(-0.75);
    let mid = (i as f64 - 1.0) / 2.0;
    let per_vertex = (0..i)
        .map(|dj| {
            let delta = dj as f64 - mid;
            -2.0 * delta * delta / (k - i) as f64 + eps * delta.abs()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    (i as f64 * per_vertex).max(0.0).exp_m1()
}

fn log_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::NEG_INFINITY, log_add_exp)
}

pub fn variance_bound_profile(n: u64, k: u64, mode: PkiMode) -> Result<MomentReport> {
    if k > n {
        return Err(Error::domain(format!("need k <= n; got n = {n}, k = {k}")));
    }
    if k.is_multiple_of(2) || k < 3 {
        return Err(Error::domain(format!("the profile needs odd k >= 3; got k = {k}")));
    }
    let t = choose_threshold(n, k).ok();
    let mut exact_base = None;
    let (log_ex, ln_pk, mut counter) = match mode {
        PkiMode::Exact => {
            if k % 4 == 3 {
                return Err(Error::domain(format!(
                    "k = {k} is 3 mod 4: k (k-1)/2 is odd, so p_k = 0 and E[X] = 0"
                )));
            }
            let ku = k as usize;
            check_pki_budget(ku)?;
            let pk = exact_pk(ku)?;
            let ln_pk = pk.ln();
            exact_base = Some(pk);
            (ln_binomial(n, k) + ln_pk, ln_pk, Some(ConstrainedCounter::new()))
        }
        PkiMode::LemmaBound => {
            let ln_pk = ln_pk_asymptotic(k);
            (ln_binomial(n, k) + ln_pk, ln_pk, None)
        }
    };

    let mut rows = Vec::with_capacity(k as usize - 2);
    for i in 2..k {
        let case = case_label(k, i, t);
        let lbr = log_binomial_ratio(n, k, i);
        let (source, log_ratio) = match counter.as_mut() {
            Some(c) => {
                let pki = exact_pki_with(c, k as usize, i as usize)?;
                let pk = exact_base.as_ref().expect("set in exact mode");
                (RatioSource::Exact, pki.probability.ln_ratio(pk))
            }
            None if case == CaseLabel::Case3 => (RatioSource::Trivial, -ln_pk),
            None => (RatioSource::LemmaB, bound_pki(k as usize, i as usize)?.log_b),
        };
        let log_g = lbr + log_ratio;
        let log_covariance = if log_ratio > 0.0 {
            lbr + ln_expm1(log_ratio)
        } else {
            f64::NEG_INFINITY
        };
        let log_contribution = if case == CaseLabel::SmallI {
            let excess = match source {
                RatioSource::Exact => log_ratio.exp_m1().abs(),
                _ => band_excess_estimate(k, i),
            };
            lbr + excess.ln()
        } else {
            log_g
        };
        rows.push(MomentRow {
            i,
            case,
            source,
            log_binomial_ratio: lbr,
            log_pki_ratio: log_ratio,
            log_g,
            log_covariance,
            log_contribution,
            constant_sensitive: source == RatioSource::LemmaB && log_g.abs() <= LN_10,
        });
    }
    let log_variance_ratio_bound =
        log_add_exp(-log_ex, log_sum(rows.iter().map(|r| r.log_contribution)));
    let log_sum_g = log_sum(rows.iter().map(|r| r.log_g));
    Ok(MomentReport {
        n,
        k,
        mode,
        log_ex,
        t,
        rows,
        log_variance_ratio_bound,
        log_sum_g,
    })
}

/// Relative size below which tail terms stop being added.
const TAIL_CUTOFF: f64 = 1e-30;

/// `ln sum_(k >= k0) (e n / k)^k k (pi k / 2)^(-k/2)`, over `k0 <= k <= n`.
///
/// Summation stops once the terms are decreasing and below `1e-30` of the
/// running sum. An empty range (`k0 > n`) gives `-inf`.
pub fn upper_bound_tail(n: u64, k0: u64) -> Result<f64> {
    if k0 < 3 {
        return Err(Error::domain(format!("need k0 >= 3; got {k0}")));
    }
    let nf = n as f64;
    let term = |k: u64| {
        let kf = k as f64;
        kf * (E * nf / kf).ln() + kf.ln() + ln_pk_asymptotic(k)
    };
    let mut total = f64::NEG_INFINITY;
    let mut prev = f64::INFINITY;
    for k in k0..=n {
        let x = term(k);
        total = log_add_exp(total, x);
        if x < prev && x < total + TAIL_CUTOFF.ln() {
            break;
        }
        prev = x;
    }
    Ok(total)
}
