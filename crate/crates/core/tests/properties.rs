use pcr_core::arrangement::{new_wiring, validate_raw, WiringDiagram};
use pcr_core::constructions::{expand_drawing, subdivide_for_straightening};
use pcr_core::oracle::{crossing_number, OracleOptions};
use pcr_core::{find_extension, fixtures, scan_clams, verify_witness, Drawing, DrawingJson, PseudolinearModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type P = (f64, f64);

fn orient(a: P, b: P, c: P) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn proper_cross(a: P, b: P, c: P, d: P) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0.0 && orient(c, d, a) * orient(c, d, b) < 0.0
}

/// Crossing pairs of a straight-line drawing, from the coordinates alone.
fn segment_crossings(edges: &[(usize, usize)], pos: &[P]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if [a, b].iter().any(|x| *x == c || *x == d) {
                continue;
            }
            if proper_cross(pos[a], pos[b], pos[c], pos[d]) {
                out.push((i, j));
            }
        }
    }
    out
}

fn sample(seed: u64, n: usize, extra: usize) -> Drawing {
    fixtures::random_straight(&mut ChaCha8Rng::seed_from_u64(seed), n, extra)
}

fn sample_with_positions(seed: u64, n: usize, extra: usize) -> (Drawing, Vec<P>) {
    let geo = fixtures::random_geometry(&mut ChaCha8Rng::seed_from_u64(seed), n, extra);
    (geo.to_drawing().unwrap(), geo.positions)
}

/// Simple arrangements, independently: every switch removes one inversion of
/// the reversed order and the total equals the pair count.
fn simple_by_inversions(s: usize, sw: &[usize]) -> bool {
    let mut rows: Vec<usize> = (0..s).collect();
    for &p in sw {
        if p == 0 || p >= s || rows[p - 1] > rows[p] {
            return false;
        }
        rows.swap(p - 1, p);
    }
    sw.len() == s * (s - 1) / 2
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn wiring_validity_matches_inversion_count(s in 1usize..6, sw in prop::collection::vec(0usize..6, 0..12)) {
        let ok = new_wiring(s, &sw).is_ok();
        prop_assert_eq!(ok, simple_by_inversions(s, &sw));
        if ok {
            prop_assert!(validate_raw(s, &sw).passes());
        }
    }

    #[test]
    fn bubble_sort_gives_a_simple_arrangement(s in 1usize..8) {
        let mut sw = Vec::new();
        for pass in 0..s {
            for p in 1..s - pass {
                sw.push(p);
            }
        }
        let w = new_wiring(s, &sw).unwrap();
        let pairs: Vec<(usize, usize)> = w.crossing_list().into_iter().map(|(_, p)| p).collect();
        prop_assert_eq!(pairs.len(), s * (s - 1) / 2);
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), pairs.len());
        let back = WiringDiagram::from_json(&w.to_json()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn straight_drawings_are_consistent(seed in any::<u64>(), n in 3usize..8, extra in 0usize..8) {
        let (d, pos) = sample_with_positions(seed, n, extra);
        let g = d.graph();
        let cr = segment_crossings(g.edges(), &pos);
        prop_assert_eq!(d.crossing_count(), cr.len());
        prop_assert!(d.is_good().passes());
        prop_assert!(scan_clams(&d).is_empty());
        // Euler on the planarization
        let faces = d.faces().unwrap().len();
        let nodes = g.vertex_count() + cr.len();
        let links = g.edge_count() + 2 * cr.len();
        prop_assert_eq!(nodes + faces, links + 2);
        let json: DrawingJson = serde_json::from_str(&serde_json::to_string(&d.to_json()).unwrap()).unwrap();
        prop_assert_eq!(Drawing::from_json(&json).unwrap().to_json(), d.to_json());
    }

    #[test]
    fn expansion_multiplies_weights(seed in any::<u64>(), n in 4usize..7, extra in 0usize..6) {
        let (d, pos) = sample_with_positions(seed, n, extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let w: Vec<u64> = (0..d.graph().edge_count()).map(|_| rand::Rng::gen_range(&mut rng, 1..4)).collect();
        let want: u64 = segment_crossings(d.graph().edges(), &pos).iter().map(|&(e, f)| w[e] * w[f]).sum();
        let d = d.reweighted(w).unwrap();
        prop_assert_eq!(d.weighted_crossing_count(), want);
        let e = expand_drawing(&d).unwrap();
        prop_assert_eq!(e.crossing_count() as u64, want);
        prop_assert!(e.weights().iter().all(|&x| x == 1));
    }

    #[test]
    fn subdivision_adds_two_vertices_per_crossing(seed in any::<u64>(), n in 4usize..8, extra in 0usize..8) {
        let d = sample(seed, n, extra);
        let s = subdivide_for_straightening(&d).unwrap();
        for e in 0..d.graph().edge_count() {
            prop_assert_eq!(s.per_edge[e], 2 * d.crossings_on(e));
        }
        prop_assert_eq!(s.drawing.crossing_count(), d.crossing_count());
        prop_assert!(s.drawing.is_good().passes());
        prop_assert!(s.drawing.chains().iter().all(|c| c.len() <= 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn straight_drawings_certify(seed in any::<u64>(), n in 3usize..7, extra in 0usize..6) {
        let d = sample(seed, n, extra);
        let out = find_extension(&d, 2_000_000).unwrap();
        let w = out.witness().expect("straight-line drawings extend");
        verify_witness(&d, w).unwrap();
        let m = PseudolinearModel::from_drawing(&d, w).unwrap();
        prop_assert!(m.verify().passes());
        prop_assert_eq!(m.special_vertices().unwrap().len(), d.crossing_count());
        let e = d.graph().edge_count();
        prop_assert!(m.node_count() <= d.node_count() + e * (e - 1) / 2 + 2 * e);
        let back = PseudolinearModel::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
        let again = m.to_drawing().unwrap();
        prop_assert_eq!(again.crossing_count(), d.crossing_count());
        prop_assert_eq!(again.graph().labeled_edge_set(), d.graph().labeled_edge_set());
    }

    #[test]
    fn oracle_is_at_most_any_drawing(seed in any::<u64>(), n in 4usize..7, extra in 0usize..7) {
        let d = sample(seed, n, extra);
        let cr = crossing_number(d.graph(), &OracleOptions::default()).value().unwrap();
        prop_assert!(cr <= d.crossing_count());
        // adding an edge never lowers it
        let g = d.graph();
        if let Some((a, b)) = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| g.edge_between(a, b).is_none()) {
            let mut bigger = g.clone();
            bigger.add_edge(a, b).unwrap();
            let more = crossing_number(&bigger, &OracleOptions::default()).value().unwrap();
            prop_assert!(more >= cr);
        }
    }
}
