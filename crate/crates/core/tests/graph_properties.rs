use std::collections::HashSet;

use proptest::prelude::*;

use indreg::enumeration::oracle::degree_histogram;
use indreg::graph::{is_graphical, parse_graph6, sample_gnp, write_graph6};
use indreg::{Graph, Seed};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        let text = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}

proptest! {
    #[test]
    fn rows_are_symmetric_without_loops(g in arb_graph(64)) {
        for u in 0..g.order() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.order() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        prop_assert_eq!(Graph::from_rows(g.rows().to_vec()).unwrap(), g);
    }

    #[test]
    fn sampling_is_deterministic(n in 0usize..=64, p in 0.0f64..=1.0, seed in any::<u64>()) {
        prop_assert_eq!(sample_gnp(n, p, Seed(seed)).unwrap(), sample_gnp(n, p, Seed(seed)).unwrap());
    }
}

#[test]
fn long_form_round_trip_at_the_cap() {
    for (n, seed) in [(63usize, 1u64), (64, 2)] {
        let g = sample_gnp(n, 0.5, Seed(seed)).unwrap();
        assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
    }
}

#[test]
fn mean_edge_count_matches_binomial() {
    let trials = 10_000u64;
    let base = Seed(99);
    let total: u64 = (0..trials)
        .map(|t| sample_gnp(30, 0.5, base.derive(t)).unwrap().edge_count() as u64)
        .sum();
    let mean = total as f64 / trials as f64;
    // edge count ~ Bin(435, 1/2); the mean of 10^4 draws has sd sqrt(435/4 / 10^4)
    let sd = (435.0f64 / 4.0 / trials as f64).sqrt();
    assert!((mean - 217.5).abs() <= 3.0 * sd, "mean {mean}");
}

#[test]
fn erdos_gallai_matches_realizability() {
    for n in 1..=7usize {
        let realizable: HashSet<Vec<u32>> = degree_histogram(n).unwrap().into_keys().collect();
        let mut seq = vec![0u32; n];
        loop {
            assert_eq!(is_graphical(&seq), realizable.contains(&seq), "{seq:?}");
            let mut pos = 0;
            while pos < n && seq[pos] as usize == n - 1 {
                seq[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
            seq[pos] += 1;
        }
    }
}

#[test]
fn over_cap_orders_are_rejected() {
    assert!(sample_gnp(65, 0.5, Seed(0)).is_err());
    assert!(sample_gnp(5, 1.5, Seed(0)).is_err());
    assert!(sample_gnp(5, f64::NAN, Seed(0)).is_err());
}
