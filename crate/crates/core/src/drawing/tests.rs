use super::*;
use crate::graph::complete;

fn convex_k(n: usize) -> Drawing {
    let pos = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64 + 0.1;
            (t.cos(), t.sin())
        })
        .collect();
    PolylineDrawing::straight(complete(n), pos).to_drawing().unwrap()
}

#[test]
fn convex_k4_has_one_crossing() {
    let d = convex_k(4);
    assert_eq!(d.crossing_count(), 1);
    assert!(d.is_good().passes());
    assert_eq!(d.faces().unwrap().len(), 5);
}

#[test]
fn convex_k5_has_five_crossings() {
    let d = convex_k(5);
    assert_eq!(d.crossing_count(), 5);
    assert!(d.is_good().passes());
}

#[test]
fn json_round_trip() {
    let d = convex_k(5);
    let back = Drawing::from_json(&d.to_json()).unwrap();
    assert_eq!(back.crossing_count(), 5);
    assert_eq!(back.to_json(), d.to_json());
}

#[test]
fn clam_fixture() {
    let d = crate::fixtures::clam();
    assert_eq!(d.crossing_count(), 2);
    assert!(detect_clam(&d, TwoPath::new(2, 0, 3), TwoPath::new(4, 1, 5)).unwrap());
    assert_eq!(scan_clams(&d).len(), 1);
    assert!(scan_clams(&convex_k(5)).is_empty());
}

#[test]
fn straight_drawings_extend() {
    for n in [3, 4, 5, 6] {
        let d = convex_k(n);
        let out = find_extension(&d, 1_000_000).unwrap();
        let w = out.witness().unwrap_or_else(|| panic!("K{n}: {}", out.label()));
        verify_witness(&d, w).unwrap();
    }
}

#[test]
fn clam_does_not_extend() {
    let d = crate::fixtures::clam();
    assert!(matches!(find_extension(&d, 1_000_000).unwrap(), ExtensionOutcome::Infeasible));
}

#[test]
fn tampered_witness_is_rejected() {
    let d = convex_k(4);
    let mut w = find_extension(&d, 1_000_000).unwrap().witness().unwrap().clone();
    w.boundary.reverse();
    w.boundary.swap(0, 1);
    assert!(verify_witness(&d, &w).is_err());
    let mut w2 = find_extension(&d, 1_000_000).unwrap().witness().unwrap().clone();
    w2.curves.swap(0, 1);
    assert!(verify_witness(&d, &w2).is_err());
}
