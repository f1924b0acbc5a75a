use proptest::prelude::*;

use indreg::moments::{
    case3_start, case_label, choose_threshold, log_expected_count, upper_bound_tail,
    variance_bound_profile, CaseLabel, PkMode, PkiMode, RatioSource,
};

#[test]
fn exact_first_moment_is_the_rational() {
    let got = log_expected_count(10, 5, PkMode::Exact).unwrap();
    let want = (252.0f64 * 12.0).ln() - 10.0 * std::f64::consts::LN_2;
    assert!((got - want).abs() <= 1e-12);
}

#[test]
fn bound_strengthens_deeper_in_the_regime() {
    let totals: Vec<f64> = (101..=1001u64)
        .step_by(100)
        .map(|k| {
            variance_bound_profile(1_000_000, k, PkiMode::LemmaBound)
                .unwrap()
                .log_variance_ratio_bound
        })
        .collect();
    assert!(totals.windows(2).all(|w| w[0] < w[1]), "{totals:?}");
}

#[test]
fn rows_cover_every_overlap_once() {
    for (n, k, mode) in [
        (10u64, 5u64, PkiMode::Exact),
        (200, 13, PkiMode::Exact),
        (1_000_000, 1001, PkiMode::LemmaBound),
        (5_000, 99, PkiMode::LemmaBound),
    ] {
        let r = variance_bound_profile(n, k, mode).unwrap();
        let is: Vec<u64> = r.rows.iter().map(|x| x.i).collect();
        assert_eq!(is, (2..k).collect::<Vec<_>>());
        for row in &r.rows {
            assert!(r.log_variance_ratio_bound >= row.log_contribution);
        }
    }
}

#[test]
fn exact_rows_dominate_the_covariance_form() {
    for k in [5u64, 9, 13, 17] {
        let r = variance_bound_profile(10 * k, k, PkiMode::Exact).unwrap();
        for row in &r.rows {
            assert_eq!(row.source, RatioSource::Exact);
            assert!(row.log_pki_ratio >= 0.0);
            assert!(row.log_g >= row.log_covariance, "k = {k}, i = {}", row.i);
        }
    }
}

#[test]
fn pki_deviation_trend_at_i2() {
    let devs: Vec<f64> = [5u64, 9, 13]
        .iter()
        .map(|&k| {
            let r = variance_bound_profile(10 * k, k, PkiMode::Exact).unwrap();
            r.rows[0].log_pki_ratio.exp_m1().abs()
        })
        .collect();
    assert!(devs.windows(2).all(|w| w[1] <= w[0]), "{devs:?}");
}

#[test]
fn case_labels_follow_the_fences() {
    for k in [21u64, 101, 1001, 4001] {
        let kf = k as f64;
        let fence = kf - kf / kf.ln();
        assert_eq!(case3_start(k), fence.ceil() as u64);
        for i in 2..k {
            let want = if (i as f64) <= (kf / 2.0).floor() {
                CaseLabel::Case1
            } else if (i as f64) >= fence.ceil() {
                CaseLabel::Case3
            } else {
                CaseLabel::Case2
            };
            assert_eq!(case_label(k, i, None), want, "k = {k}, i = {i}");
        }
    }
}

#[test]
fn lemma_mode_sources() {
    let r = variance_bound_profile(1_000_000, 1001, PkiMode::LemmaBound).unwrap();
    for row in &r.rows {
        let want = match row.case {
            CaseLabel::Case3 => RatioSource::Trivial,
            _ => RatioSource::LemmaB,
        };
        assert_eq!(row.source, want);
    }
}

#[test]
fn tail_examples() {
    let k0 = (2.0 * 10_000f64.powf(2.0 / 3.0)).ceil() as u64;
    assert_eq!(k0, 929);
    assert!(upper_bound_tail(10_000, k0).unwrap() < -100.0);
    assert!(upper_bound_tail(10_000, 10).unwrap() > 0.0);
}

proptest! {
    #[test]
    fn threshold_sits_between_the_fences(n in 1u64..10_000_000, k in 3u64..100_000) {
        if let Ok(t) = choose_threshold(n, k) {
            let lower = (k as f64).powi(2) / n as f64;
            prop_assert!((t as f64) > lower);
            prop_assert!((t as f64) < (k as f64).sqrt());
            prop_assert!((2..k).contains(&t));
        }
    }

    #[test]
    fn tail_decreases_in_k0(n in 100u64..100_000, k0 in 3u64..500, step in 1u64..50) {
        let a = upper_bound_tail(n, k0).unwrap();
        let b = upper_bound_tail(n, k0 + step).unwrap();
        prop_assert!(b <= a);
    }
}
