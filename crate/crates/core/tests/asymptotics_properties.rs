use proptest::prelude::*;

use indreg::asymptotics::{
    estimate_count, estimate_pk, log_central_binomial_offset, log_ratio_estimate, prob_induced,
    RatioSpec, Regime,
};
use indreg::enumeration::{count_by_degree_sequence, exact_pk};
use indreg::graph::is_graphical;
use indreg::math::ln_binomial;
use indreg::DegreeSequence;

/// Three cores of length `i` with entries in `[0, i-1]` and even sums;
/// the shifts `d - e` and `e - f` chain `d -> e -> f`.
fn arb_chain() -> impl Strategy<Value = (usize, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (prop_oneof![Just(101usize), Just(1001), Just(10_001)], 2usize..=6).prop_flat_map(|(k, i)| {
        let core = proptest::collection::vec(0u32..i as u32, i).prop_map(even_sum);
        (Just(k), core.clone(), core.clone(), core)
    })
}

fn even_sum(mut d: Vec<u32>) -> Vec<u32> {
    if d.iter().sum::<u32>() % 2 == 1 {
        d[0] = if d[0] > 0 { d[0] - 1 } else { 1 };
    }
    d
}

fn diff(a: &[u32], b: &[u32]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect()
}

proptest! {
    #[test]
    fn ratio_composition_law((k, d, e, f) in arb_chain()) {
        let first = RatioSpec::new(k, d.clone(), diff(&d, &e)).unwrap();
        let second = RatioSpec::new(k, e.clone(), diff(&e, &f)).unwrap();
        let direct = RatioSpec::new(k, d.clone(), diff(&d, &f)).unwrap();
        prop_assert_eq!(first.shifted_core(), e);
        let lhs = log_ratio_estimate(&first) + log_ratio_estimate(&second);
        let rhs = log_ratio_estimate(&direct);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn induced_estimate_is_complement_symmetric(i in 1usize..=3, raw in proptest::collection::vec(0u32..3, 3), k in prop_oneof![Just(13usize), Just(17), Just(25), Just(101)]) {
        let h: Vec<u32> = raw[..i].iter().map(|&d| d % i as u32).collect();
        prop_assume!(is_graphical(&h));
        let comp: Vec<u32> = h.iter().map(|&d| i as u32 - 1 - d).collect();
        let a = prob_induced(k, &h).unwrap();
        let b = prob_induced(k, &comp).unwrap();
        prop_assert_eq!(a.log_value, b.log_value);
    }

    #[test]
    fn evaluators_are_pure(k in 3usize..200, x in -5.0f64..5.0) {
        prop_assert_eq!(estimate_pk(k).unwrap(), estimate_pk(k).unwrap());
        let a = 100 + k as u64;
        prop_assert_eq!(
            log_central_binomial_offset(a, x).unwrap(),
            log_central_binomial_offset(a, x).unwrap()
        );
        let d = DegreeSequence::regular(4 * (k / 4) + 5, 2 * (k / 4) as u32 + 2);
        prop_assert_eq!(estimate_count(&d).unwrap(), estimate_count(&d).unwrap());
    }
}

#[test]
fn count_estimate_near_half_density() {
    let mut checked = 0;
    for code in 0..3u32.pow(7) {
        let d: Vec<u32> = (0..7).map(|j| 2 + code / 3u32.pow(j) % 3).collect();
        if !is_graphical(&d) {
            continue;
        }
        let seq = DegreeSequence::new(d.clone());
        let est = estimate_count(&seq).unwrap();
        let exact = count_by_degree_sequence(&seq).ln();
        let q = (est.log_value - exact).exp();
        assert!((0.7..=1.5).contains(&q), "{d:?}: {q}");
        checked += 1;
    }
    assert!(checked > 1000);
}

#[test]
fn pk_estimate_ratio_is_bounded_and_rising() {
    // The dropped (1 + o(1))^k factor does not vanish: the exact/estimate
    // ratio climbs toward sqrt(2) e^(1/2) instead of falling to 1.
    let limit = 2f64.sqrt() * 0.5f64.exp();
    let ratios: Vec<f64> = [5usize, 9, 13, 17, 21]
        .iter()
        .map(|&k| (exact_pk(k).unwrap().ln() - estimate_pk(k).unwrap().log_value).exp())
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] < w[1]), "{ratios:?}");
    assert!(ratios.iter().all(|&r| r > 2.0 && r < limit), "{ratios:?}");
    assert!(ratios[2] <= 3.0);
}

#[test]
fn central_binomial_offset_tracks_exact() {
    let approx = log_central_binomial_offset(100, 5.0).unwrap();
    assert!((approx.log_value - ln_binomial(100, 55)).abs() < 1e-2);
    for a in [200u64, 1000, 10_000] {
        let x = (a as f64).sqrt().floor();
        let got = log_central_binomial_offset(a, x).unwrap();
        let exact = ln_binomial(a, a / 2 + x as u64);
        // the error shrinks with the cubic driver
        assert!((got.log_value - exact).abs() < 10.0 * got.cubic_driver + 1e-2 / (a as f64).sqrt());
    }
}

#[test]
fn regimes_are_gated_by_the_proxy() {
    let sharp = estimate_count(&DegreeSequence::regular(101, 50)).unwrap();
    assert_eq!(sharp.regime, Regime::Sharp);
    // deviations of about 12 > 101^0.49 = 9.6 at density 1/2
    let mut wide = vec![38u32; 50];
    wide.extend(vec![62u32; 50]);
    wide.push(50);
    let bounded = estimate_count(&DegreeSequence::new(wide)).unwrap();
    assert_eq!(bounded.regime, Regime::Bounded);
    assert!(bounded.max_deviation > 101f64.powf(0.49));
}
