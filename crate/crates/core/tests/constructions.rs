use pcr_core::arrangement::{new_wiring, non_pappus_9};
use pcr_core::constructions::{
    build_ga, expand_graph, expand_weighted, pcr_value, subdivide_for_straightening, substitute_heavy, SubstituteError,
};
use pcr_core::graph::{complete, Graph, WeightedGraph};
use pcr_core::oracle::{crossing_number, OracleOptions};
use pcr_core::{fixtures, Drawing, PolylineDrawing};

fn weighted_of(d: &Drawing) -> WeightedGraph {
    WeightedGraph::new(d.graph().clone(), d.weights().to_vec(), d.colors().to_vec()).unwrap()
}

#[test]
fn heavy_edge_becomes_two_paths() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let wg = WeightedGraph::new(g, vec![3], vec![Default::default()]).unwrap();
    let out = expand_graph(&wg).unwrap();
    assert_eq!(out.graph.vertex_count(), 5);
    assert_eq!(out.graph.edge_count(), 6);
    for x in 2..5 {
        assert_eq!(out.graph.neighbors(x), vec![0, 1]);
    }
}

#[test]
fn crossing_pair_expands_to_the_product() {
    let d = fixtures::weighted_pair();
    let (g, e) = expand_weighted(&weighted_of(&d), Some(&d)).unwrap();
    let e = e.unwrap();
    assert_eq!(e.crossing_count(), 6);
    assert!(e.is_good().passes());
    assert_eq!(g.graph.edge_count(), 10);
    assert!(g.weights().iter().all(|&w| w == 1));
}

#[test]
fn ga_expansion_keeps_the_weighted_count() {
    for m in 1..=2 {
        let ga = build_ga(&new_wiring(2, &[1]).unwrap(), m).unwrap();
        let (_, e) = expand_weighted(&ga.graph, Some(&ga.drawing)).unwrap();
        let e = e.unwrap();
        assert_eq!(e.crossing_count() as u64, pcr_value(2, m));
        assert!(e.is_good().passes());
    }
}

#[test]
fn non_pappus_expansion_keeps_the_weighted_count() {
    let ga = build_ga(&non_pappus_9(), 1).unwrap();
    let (_, e) = expand_weighted(&ga.graph, Some(&ga.drawing)).unwrap();
    assert_eq!(e.unwrap().crossing_count(), 180);
}

#[test]
fn expansion_rejects_a_foreign_drawing() {
    let d = fixtures::weighted_pair();
    let other = weighted_of(&fixtures::straight_k4());
    assert!(expand_weighted(&other, Some(&d)).is_err());
}

#[test]
fn weighted_k5_matches_the_oracle_after_expansion() {
    // the weight-2 edge can avoid the single crossing
    let d = fixtures::straight_k5();
    let mut w = vec![1; 10];
    w[0] = 2;
    let wg = WeightedGraph::new(d.graph().clone(), w, d.colors().to_vec()).unwrap();
    let g = expand_graph(&wg).unwrap().graph;
    assert_eq!(crossing_number(&g, &OracleOptions::default()).value(), Some(1));
}

#[test]
fn planar_drawing_is_not_subdivided() {
    let d = fixtures::straight_k4();
    let s = subdivide_for_straightening(&d).unwrap();
    assert_eq!(s.subdivided_edges(), 0);
    assert_eq!(s.graph, *d.graph());
}

#[test]
fn k5_subdivision() {
    let d = fixtures::straight_k5();
    let s = subdivide_for_straightening(&d).unwrap();
    assert_eq!(s.subdivided_edges(), 2);
    assert_eq!(s.max_per_edge(), 2);
    assert_eq!(s.drawing.crossing_count(), 1);
    assert_eq!(s.graph.edge_count(), 14);
    assert!(s.drawing.is_good().passes());
    // the crossed edges of the result are crossed once each
    let (_, [e, f]) = s.drawing.crossings()[0];
    assert_eq!(s.drawing.chain(e).len(), 3);
    assert_eq!(s.drawing.chain(f).len(), 3);
    assert_eq!(crossing_number(&s.graph, &OracleOptions::default()).value(), Some(1));
}

#[test]
fn thrice_crossed_edge_gets_six_vertices() {
    let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
    let pos = vec![(0.0, 0.0), (10.0, 0.0), (2.0, -1.0), (2.0, 1.0), (5.0, -1.0), (5.0, 1.0), (8.0, -1.0), (8.0, 1.0)];
    let d = PolylineDrawing::straight(g, pos).to_drawing().unwrap();
    let s = subdivide_for_straightening(&d).unwrap();
    assert_eq!(s.per_edge, vec![6, 2, 2, 2]);
    assert_eq!(s.drawing.crossing_count(), 3);
}

#[test]
fn substitution_on_a_triangle() {
    let g = complete(3);
    let out = substitute_heavy(&g, &[0], 4, 1, 4).unwrap();
    assert_eq!(out.vertex_count(), 3 + 4 + 1);
    assert_eq!(out.edge_count(), 3 - 1 - 1 + 2 * 4 + 2);
    assert!(out.edge_between(1, 2).is_some());
    assert!(out.edge_between(0, 1).is_none());
}

#[test]
fn substitution_edge_count_formula() {
    let g = complete(5);
    let heavy = [0, 3, 7];
    let (m, k) = (6, 5);
    let out = substitute_heavy(&g, &heavy, m, 9, k).unwrap();
    assert_eq!(out.edge_count(), 10 - heavy.len() - 1 + 2 * m * heavy.len() + 2 * (k - 3));
}

#[test]
fn substitution_parameters_are_checked() {
    let g = complete(3);
    assert_eq!(substitute_heavy(&g, &[0], 3, 1, 4), Err(SubstituteError::ParameterViolation { m: 3, k: 4 }));
    assert_eq!(substitute_heavy(&g, &[0], 5, 1, 3), Err(SubstituteError::ParameterViolation { m: 5, k: 3 }));
    assert_eq!(substitute_heavy(&g, &[1], 5, 1, 4), Err(SubstituteError::SpecialIsHeavy));
}
