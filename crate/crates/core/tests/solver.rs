mod common;

use proptest::prelude::*;

use common::{brute_alpha, brute_delta, brute_iota, brute_low_degree, brute_sigma};
use sensitivity_core::coxeter::{coxeter_cayley, coxeter_system};
use sensitivity_core::graph::{
    complete_graph, cycle_graph, desargues_graph, empty_graph, generalized_petersen, hypercube_graph,
    lexicographic_product, petersen_graph,
};
use sensitivity_core::incidence::levi_graph;
use sensitivity_core::solver::{
    delta_beta, heuristic_low_degree_set, independence_number, iota, kappa_search, max_low_degree_set, sensitivity,
    Ratio, SearchBudget, SearchMode, SolveResult, Status,
};
use sensitivity_core::{cayley_graph, group_make, verify_certificate, ConnectionSet, Graph};

fn all() -> SearchBudget {
    SearchBudget::unlimited()
}

fn witness_ok(g: &Graph, r: &SolveResult) {
    if let Some(w) = &r.witness {
        let report = verify_certificate(g, w);
        assert!(report.is_valid(), "{report}");
    }
}

fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", complete_graph(2)),
        ("K5", complete_graph(5)),
        ("C5", cycle_graph(5)),
        ("C6", cycle_graph(6)),
        ("C9", cycle_graph(9)),
        ("Q3", hypercube_graph(3)),
        ("Q4", hypercube_graph(4)),
        ("Petersen", petersen_graph()),
        ("Heawood", levi_graph(2).unwrap()),
        ("GP(8,3)", generalized_petersen(8, 3)),
        ("GP(6,2)", generalized_petersen(6, 2)),
        ("A3", coxeter_cayley(&coxeter_system("A3").unwrap())),
    ]
}

#[test]
fn oracle_equivalence_on_corpus() {
    for (name, g) in corpus().into_iter().filter(|(_, g)| g.n() <= 20) {
        let a = independence_number(&g, &all());
        assert!(a.is_exact());
        assert_eq!(a.value as usize, brute_alpha(&g), "{name} α");
        witness_ok(&g, &a);
        for k in 1..=3 {
            let r = max_low_degree_set(&g, k, &all());
            assert_eq!(r.value as usize, brute_low_degree(&g, k), "{name} k = {k}");
            witness_ok(&g, &r);
        }
        let s = sensitivity(&g, None, &all());
        assert!(s.is_exact());
        assert_eq!(s.value as usize, brute_sigma(&g), "{name} σ");
        witness_ok(&g, &s);
        for k in 0..=2 {
            let r = iota(&g, k, &all());
            match brute_iota(&g, k) {
                Some(v) => {
                    assert_eq!((r.value, r.status), (v, Status::Exact), "{name} ι_{k}");
                    witness_ok(&g, &r);
                }
                None => assert_eq!(r.status, Status::Infeasible, "{name} ι_{k}"),
            }
        }
    }
}

#[test]
fn spec_examples() {
    assert_eq!(max_low_degree_set(&cycle_graph(6), 1, &all()).value, 4);
    assert!(max_low_degree_set(&hypercube_graph(4), 2, &all()).value >= 9);
    assert_eq!(independence_number(&petersen_graph(), &all()).value, 4);
    let z3 = group_make("elementary:3^2").unwrap();
    let conn = ConnectionSet::from_labels(&z3, &["(1,0)", "(2,0)", "(0,1)", "(0,2)"]).unwrap();
    assert_eq!(independence_number(&cayley_graph(&z3, &conn), &all()).value, 3);
    assert_eq!(sensitivity(&generalized_petersen(8, 3), None, &all()).value, 2);
    assert_eq!(sensitivity(&hypercube_graph(4), None, &all()).value, 2);

    let c6 = cycle_graph(6);
    assert_eq!(delta_beta(&c6, Ratio::new(2, 3).unwrap(), &all()).value, 1);
    assert_eq!(delta_beta(&petersen_graph(), Ratio::new(1, 1).unwrap(), &all()).value, 3);
    let p = delta_beta(&petersen_graph(), Ratio::new(3, 5).unwrap(), &all()).value;
    let d = delta_beta(&desargues_graph(), Ratio::new(3, 5).unwrap(), &all()).value;
    assert!(p >= 1 && d <= p);

    assert_eq!((iota(&complete_graph(2), 0, &all()).value), 0);
    assert_eq!(iota(&c6, 1, &all()).value, 2);
    assert!(iota(&hypercube_graph(4), 2, &all()).value >= 2);
    assert_eq!(iota(&complete_graph(5), 0, &all()).status, Status::Infeasible);

    assert_eq!(kappa_search(&hypercube_graph(3), 6, &all()).unwrap().value, 3);
    assert_eq!(kappa_search(&levi_graph(3).unwrap(), 6, &all()).unwrap().value, 1);
    let b3 = coxeter_cayley(&coxeter_system("B3").unwrap());
    assert_eq!(kappa_search(&b3, 6, &all()).unwrap().value, 2);
    assert!(kappa_search(&b3, 7, &all()).is_err());
}

#[test]
fn kappa_on_known_graphs() {
    let k44 = {
        let mut b = sensitivity_core::GraphBuilder::new(8);
        for u in 0..4 {
            for v in 4..8 {
                b.add_edge(u, v);
            }
        }
        b.build()
    };
    for (g, want) in [
        (k44, 3),
        (complete_graph(4), 2),
        (cycle_graph(6), 1),
        (hypercube_graph(5), 5),
        (petersen_graph(), 1),
    ] {
        let r = kappa_search(&g, 6, &all()).unwrap();
        assert_eq!((r.value, r.status), (want, Status::Exact));
        witness_ok(&g, &r);
    }
}

/// `σ(G) ≥ √κ(G)` on bipartite Cayley graphs.
#[test]
fn huang_bound_on_bipartite_cayley_graphs() {
    let mut graphs = vec![
        hypercube_graph(3),
        hypercube_graph(4),
        generalized_petersen(8, 3),
        lexicographic_product(&hypercube_graph(3), &empty_graph(2)),
    ];
    graphs.extend((2..=4).map(|q| levi_graph(q).unwrap()));
    for name in ["A3", "B3", "I5", "I8", "A2xI2", "A1xA1xA1xI3"] {
        graphs.push(coxeter_cayley(&coxeter_system(name).unwrap()));
    }
    for g in graphs {
        assert!(g.is_bipartite() && g.n() <= 120);
        let s = sensitivity(&g, None, &all());
        let k = kappa_search(&g, 6, &all()).unwrap();
        assert!(s.is_exact() && k.is_exact());
        assert!((s.value * s.value) >= k.value, "{}: σ = {} κ = {}", g.provenance(), s.value, k.value);
    }
}

#[test]
fn exhausted_budgets_never_claim_exact() {
    let g = coxeter_cayley(&coxeter_system("B4").unwrap());
    let r = max_low_degree_set(&g, 2, &SearchBudget::nodes(50));
    assert!(!r.is_exact());
    let (lo, hi) = r.bounds();
    assert!(lo <= 252 && hi >= 235, "{}", r.summary());
    witness_ok(&g, &r);
    let s = sensitivity(&g, Some(192), &SearchBudget::nodes(10));
    let (lo, hi) = s.bounds();
    assert!(lo <= 2 && hi >= 2, "{}", s.summary());
    let lower = iota(&g, 1, &SearchBudget::unlimited().with_mode(SearchMode::LowerBoundOnly));
    assert_ne!(lower.status, Status::Exact);
}

#[test]
fn budget_parsing() {
    assert!(SearchBudget::parse("600s").unwrap().time_limit.is_some());
    assert_eq!(SearchBudget::parse("1e7nodes").unwrap().node_limit, Some(10_000_000));
    assert!(SearchBudget::parse("fast").is_err());
    assert!(SearchBudget::parse("-1s").is_err());
    assert_eq!(Ratio::parse("0.6").unwrap().ceil_times(10), 6);
    assert_eq!(Ratio::parse("2/3").unwrap().ceil_times(7), 5);
    assert!(Ratio::parse("3/2").is_err());
}

#[test]
fn deterministic_replay() {
    let g = generalized_petersen(8, 3);
    let a = sensitivity(&g, None, &all());
    let b = sensitivity(&g, None, &all());
    assert_eq!(a.witness, b.witness);
    assert_eq!(heuristic_low_degree_set(&g, 1, 9, 100), heuristic_low_degree_set(&g, 1, 9, 100));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn low_degree_matches_oracle(g in common::arb_graph(1, 13), k in 0usize..4) {
        let r = max_low_degree_set(&g, k, &all());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.value as usize, brute_low_degree(&g, k));
        witness_ok(&g, &r);
    }

    #[test]
    fn sensitivity_matches_oracle(g in common::arb_graph(2, 12)) {
        prop_assume!(g.m() > 0);
        let r = sensitivity(&g, None, &all());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.value as usize, brute_sigma(&g));
        witness_ok(&g, &r);
    }

    #[test]
    fn delta_beta_matches_oracle(g in common::arb_graph(1, 12), num in 1u64..=10) {
        let beta = Ratio::new(num, 10).unwrap();
        let r = delta_beta(&g, beta, &all());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.value as usize, brute_delta(&g, beta.ceil_times(g.n())));
        witness_ok(&g, &r);
    }

    #[test]
    fn iota_matches_oracle(g in common::arb_graph(1, 12), k in 0usize..3) {
        let r = iota(&g, k, &all());
        match brute_iota(&g, k) {
            Some(v) => {
                prop_assert_eq!(r.status, Status::Exact);
                prop_assert_eq!(r.value, v);
                witness_ok(&g, &r);
            }
            None => prop_assert_eq!(r.status, Status::Infeasible),
        }
    }

    #[test]
    fn monotone_in_k_and_beta(g in common::arb_graph(1, 12)) {
        let sizes: Vec<i64> = (0..4).map(|k| max_low_degree_set(&g, k, &all()).value).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        let deltas: Vec<i64> = (1..=10).map(|i| delta_beta(&g, Ratio::new(i, 10).unwrap(), &all()).value).collect();
        prop_assert!(deltas.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn heuristic_sets_are_feasible(g in common::arb_graph(1, 14), k in 0usize..3, seed in 0u64..100) {
        let set = heuristic_low_degree_set(&g, k, seed, 50);
        prop_assert!(g.induced_max_degree(&set).unwrap() <= k);
        prop_assert!(set.len() <= brute_low_degree(&g, k));
    }

    #[test]
    fn node_budgets_bracket_the_optimum(g in common::arb_graph(6, 14), k in 0usize..3, nodes in 1u64..40) {
        let truth = brute_low_degree(&g, k) as i64;
        let r = max_low_degree_set(&g, k, &SearchBudget::nodes(nodes));
        let (lo, hi) = r.bounds();
        prop_assert!(lo <= truth && truth <= hi, "{} vs {}", r.summary(), truth);
        witness_ok(&g, &r);
    }
}
