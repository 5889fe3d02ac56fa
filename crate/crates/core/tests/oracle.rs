use pcr_core::graph::{complete, complete_bipartite, Graph};
use pcr_core::oracle::{crossing_number, crossing_number_leq, is_planar, CrossingNumber, Decision, OracleOptions};

fn opts(jobs: usize) -> OracleOptions {
    OracleOptions { jobs, ..OracleOptions::default() }
}

#[test]
fn k6_has_three_crossings() {
    let r = crossing_number(&complete(6), &opts(1));
    let CrossingNumber::Exact(k, a) = r else { panic!("budget exceeded") };
    assert_eq!(k, 3);
    assert!(a.is_realizable(&complete(6)));
}

#[test]
fn threads_do_not_change_the_answer() {
    for g in [complete(5), complete(6), complete_bipartite(3, 3)] {
        assert_eq!(crossing_number(&g, &opts(1)), crossing_number(&g, &opts(4)));
    }
}

#[test]
fn k33_decisions() {
    let g = complete_bipartite(3, 3);
    assert_eq!(crossing_number_leq(&g, 0, &opts(1)), Decision::No);
    assert!(matches!(crossing_number_leq(&g, 1, &opts(1)), Decision::Yes(_)));
    assert_eq!(crossing_number(&g, &opts(1)).value(), Some(1));
}

#[test]
fn planar_graphs_need_no_crossings() {
    let cube = Graph::from_edges(
        8,
        &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
    )
    .unwrap();
    assert!(is_planar(&cube));
    assert!(matches!(crossing_number_leq(&cube, 0, &opts(1)), Decision::Yes(_)));
}

#[test]
fn monotone_in_k() {
    let g = complete(6);
    let answers: Vec<bool> =
        (0..=4).map(|k| matches!(crossing_number_leq(&g, k, &opts(1)), Decision::Yes(_))).collect();
    assert_eq!(answers, vec![false, false, false, true, true]);
}

#[test]
fn petersen_graph_has_two_crossings() {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let g = Graph::from_edges(10, &edges).unwrap();
    assert!(!is_planar(&g));
    assert_eq!(crossing_number(&g, &opts(2)).value(), Some(2));
}

#[test]
fn budget_exhaustion_is_deterministic() {
    let small = OracleOptions { budget: 100, jobs: 1 };
    let parallel = OracleOptions { budget: 100, jobs: 3 };
    assert_eq!(crossing_number(&complete(6), &small), crossing_number(&complete(6), &parallel));
    assert_eq!(crossing_number_leq(&complete(6), 3, &small), Decision::BudgetExceeded);
}
