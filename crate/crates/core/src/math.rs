//! Small numeric helpers shared by the exact and asymptotic modules.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

const LN_FACT_TABLE_LEN: usize = 256;

fn ln_fact_table() -> &'static [f64; LN_FACT_TABLE_LEN] {
    static TABLE: OnceLock<[f64; LN_FACT_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; LN_FACT_TABLE_LEN];
        for i in 1..LN_FACT_TABLE_LEN {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    })
}

/// ln(n!), tabulated below 256 and Stirling with three correction terms above.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACT_TABLE_LEN {
        return ln_fact_table()[n as usize];
    }
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x * x2 * x2)
}

/// ln C(n, k); `-inf` when k > n.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Exact C(n, k) for n ≤ 64 (the result always fits in a u64).
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Exact C(n, k) as a big integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Natural log of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// x ln x with the continuous extension 0 ln 0 = 0.
pub fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// ln(e^a + e^b) without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// ln(e^x - 1) for x > 0.
pub fn ln_expm1(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}
