use indreg::graph::{sample_gnp, parse_graph6};
use indreg::search::{
    max_induced_regular_brute_force, max_induced_regular_exact, max_induced_regular_heuristic,
    DEFAULT_ITERATION_BUDGET, DEFAULT_NODE_BUDGET,
};
use indreg::{Graph, Seed};

fn graphs(count: u64, n_max: usize, seed: Seed) -> Vec<Graph> {
    (0..count)
        .map(|t| {
            let n = 1 + (t as usize * 5) % n_max;
            sample_gnp(n, 0.5, seed.derive(t)).unwrap()
        })
        .collect()
}

#[test]
fn exact_matches_subset_enumeration() {
    for g in graphs(30, 12, Seed(314)) {
        let fast = max_induced_regular_exact(&g, DEFAULT_NODE_BUDGET);
        let slow = max_induced_regular_brute_force(&g);
        assert!(fast.optimal);
        assert_eq!((fast.size, fast.r, fast.subset), (slow.size, slow.r, slow.subset), "{g:?}");
    }
}

#[test]
fn heuristic_never_beats_exact_and_usually_ties() {
    let mut ties = 0;
    for (t, g) in (0..30).map(|t| (t, sample_gnp(12, 0.5, Seed(2718).derive(t)).unwrap())) {
        let exact = max_induced_regular_exact(&g, DEFAULT_NODE_BUDGET);
        let heur = max_induced_regular_heuristic(&g, Seed(t), DEFAULT_ITERATION_BUDGET);
        assert!(heur.size <= exact.size);
        assert!(!heur.optimal);
        ties += (heur.size == exact.size) as usize;
    }
    assert!(ties >= 24, "only {ties}/30 ties");
}

#[test]
fn returned_subsets_are_regular() {
    for g in graphs(20, 30, Seed(5)) {
        for r in [
            max_induced_regular_exact(&g, 10_000),
            max_induced_regular_heuristic(&g, Seed(1), 2_000),
        ] {
            let mask = r.mask();
            assert_eq!(g.induced_regular_degree(mask), Some(r.r));
            assert_eq!(r.size, r.subset.len());
            assert!(r.subset.windows(2).all(|w| w[0] < w[1]));
            assert!(g.order() == 0 || r.size >= 1);
        }
    }
}

#[test]
fn deterministic_results() {
    let g = sample_gnp(35, 0.5, Seed(8)).unwrap();
    let a = max_induced_regular_heuristic(&g, Seed(4), 5_000);
    assert_eq!(a, max_induced_regular_heuristic(&g, Seed(4), 5_000));
    let h = sample_gnp(18, 0.5, Seed(8)).unwrap();
    assert_eq!(
        max_induced_regular_exact(&h, DEFAULT_NODE_BUDGET),
        max_induced_regular_exact(&h, DEFAULT_NODE_BUDGET)
    );
}

#[test]
fn complete_graphs_are_whole() {
    for n in 1..=24 {
        let r = max_induced_regular_exact(&Graph::complete(n), u64::MAX);
        assert_eq!((r.size, r.r, r.optimal), (n, n - 1, true));
    }
}

#[test]
fn named_graphs() {
    let k3 = max_induced_regular_exact(&parse_graph6("Bw").unwrap(), DEFAULT_NODE_BUDGET);
    assert_eq!((k3.size, k3.r), (3, 2));
    let p3 = max_induced_regular_exact(&Graph::path(3), DEFAULT_NODE_BUDGET);
    assert_eq!(p3.size, 2);
    let c9 = max_induced_regular_heuristic(&Graph::cycle(9), Seed(0), DEFAULT_ITERATION_BUDGET);
    assert_eq!((c9.size, c9.r), (9, 2));
}

#[test]
fn json_shape() {
    let r = max_induced_regular_exact(&Graph::path(3), DEFAULT_NODE_BUDGET);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["subset"], serde_json::json!([0, 2]));
    assert_eq!(v["r"], 0);
    assert_eq!(v["size"], 2);
    assert_eq!(v["optimal"], true);
    assert!(v["nodes_expanded"].is_u64());
}
