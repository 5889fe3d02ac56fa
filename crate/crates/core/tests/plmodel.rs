use pcr_core::arrangement::new_wiring;
use pcr_core::constructions::build_ga;
use pcr_core::graph::complete;
use pcr_core::{find_extension, fixtures, Drawing, ExtensionOutcome, ModelError, PseudolinearModel};

fn model(d: &Drawing) -> PseudolinearModel {
    let out = find_extension(d, 2_000_000).unwrap();
    let w = out.witness().expect("drawing is pseudolinear");
    PseudolinearModel::from_drawing(d, w).unwrap()
}

#[test]
fn planar_k4_has_no_special_vertices() {
    let m = model(&fixtures::straight_k4());
    assert!(m.verify().passes());
    assert!(m.special_vertices().unwrap().is_empty());
    assert_eq!(m.induced_graph().unwrap().labeled_edge_set(), complete(4).labeled_edge_set());
    let d = m.to_drawing().unwrap();
    assert_eq!(d.crossing_count(), 0);
}

#[test]
fn k5_model_certifies_one_crossing() {
    let m = model(&fixtures::straight_k5());
    assert!(m.verify().passes());
    assert_eq!(m.special_vertices().unwrap().len(), 1);
    let g = m.induced_graph().unwrap();
    assert_eq!(g.edge_count(), m.paths().len());
    assert_eq!(g.labeled_edge_set(), complete(5).labeled_edge_set());
    let d = m.to_drawing().unwrap();
    assert_eq!(d.crossing_count(), 1);
    assert!(d.is_good().passes());
    assert!(find_extension(&d, 2_000_000).unwrap().witness().is_some());
}

#[test]
fn ga_model_counts_the_expanded_crossings() {
    let ga = build_ga(&new_wiring(2, &[1]).unwrap(), 1).unwrap();
    let m = model(&ga.drawing);
    assert!(m.verify().passes());
    assert_eq!(m.special_vertices().unwrap().len(), ga.drawing.crossing_count());
    assert_eq!(m.to_drawing().unwrap().crossing_count(), ga.drawing.crossing_count());
}

#[test]
fn path_with_three_distinguished_vertices_fails() {
    let m = model(&fixtures::straight_k4());
    let mut json = m.to_json();
    let p = &json.paths[0];
    let extra = *p[1..p.len() - 1].iter().find(|v| !json.distinguished.contains(v)).unwrap();
    json.distinguished.push(extra);
    json.labels.push("extra".into());
    let bad = PseudolinearModel::from_json(&json).unwrap();
    let r = bad.verify();
    assert!(!r.two_distinguished_per_path);
    assert!(matches!(bad.special_vertices(), Err(ModelError::NotVerified(_))));
    assert!(matches!(bad.to_drawing(), Err(ModelError::NotVerified(_))));
}

#[test]
fn scrambled_terminals_fail_the_outer_order() {
    let m = model(&fixtures::straight_k5());
    let mut json = m.to_json();
    json.terminals.swap(0, 1);
    let r = PseudolinearModel::from_json(&json).unwrap().verify();
    assert!(!r.passes());
    assert!(!r.outer_order || !r.path_ends);
}

#[test]
fn dropped_path_breaks_the_union() {
    let m = model(&fixtures::straight_k4());
    let mut json = m.to_json();
    json.paths.pop();
    let r = PseudolinearModel::from_json(&json).unwrap().verify();
    assert!(!r.union_of_paths);
}

#[test]
fn certificate_json_round_trip() {
    let m = model(&fixtures::straight_k5());
    let text = serde_json::to_string(&m.to_json()).unwrap();
    let back = PseudolinearModel::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.to_json(), m.to_json());
    assert!(back.verify().passes());
}

#[test]
fn certificate_size_is_bounded() {
    for d in [fixtures::straight_k4(), fixtures::straight_k5()] {
        let m = model(&d);
        let e = d.graph().edge_count();
        assert!(m.node_count() <= d.node_count() + e * (e - 1) / 2 + 2 * e);
    }
}

#[test]
fn clam_admits_no_model() {
    let d = fixtures::clam();
    assert!(matches!(find_extension(&d, 2_000_000).unwrap(), ExtensionOutcome::Infeasible));
}
