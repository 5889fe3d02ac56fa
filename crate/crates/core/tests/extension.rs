use pcr_core::arrangement::{cyclic, new_wiring};
use pcr_core::constructions::build_ga;
use pcr_core::{find_extension, fixtures, scan_clams, verify_witness, Drawing, ExtensionOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_extends(d: &Drawing, what: &str) {
    let out = find_extension(d, 5_000_000).unwrap();
    let w = out.witness().unwrap_or_else(|| panic!("{what}: {}", out.label()));
    verify_witness(d, w).unwrap_or_else(|e| panic!("{what}: {e}"));
}

#[test]
fn ga_two_wires_is_pseudolinear() {
    for m in 1..=2 {
        let ga = build_ga(&new_wiring(2, &[1]).unwrap(), m).unwrap();
        assert_extends(&ga.drawing, &format!("G_A(2,{m})"));
    }
}

#[test]
fn ga_three_and_four_wires_are_pseudolinear() {
    for s in 3..=4 {
        let ga = build_ga(&cyclic(s), 1).unwrap();
        assert_extends(&ga.drawing, &format!("G_A({s},1)"));
    }
}

#[test]
fn random_straight_drawings_extend() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..12 {
        let n = 6 + i % 4;
        let d = fixtures::random_straight(&mut rng, n, n + i);
        assert_extends(&d, &format!("sample {i}"));
    }
}

#[test]
fn single_edge_extends() {
    let g = pcr_core::Graph::from_edges(2, &[(0, 1)]).unwrap();
    let d = pcr_core::PolylineDrawing::straight(g, vec![(0.0, 0.0), (1.0, 0.0)]).to_drawing().unwrap();
    assert_extends(&d, "one edge");
}

#[test]
fn clams_rule_out_extensions() {
    let d = fixtures::clam();
    assert!(!scan_clams(&d).is_empty());
    assert!(matches!(find_extension(&d, 5_000_000).unwrap(), ExtensionOutcome::Infeasible));
}

#[test]
fn tiny_budget_is_reported() {
    let ga = build_ga(&new_wiring(2, &[1]).unwrap(), 1).unwrap();
    assert!(matches!(find_extension(&ga.drawing, 1).unwrap(), ExtensionOutcome::BudgetExceeded));
}
