//! The acceptance suite: nine end-to-end checks with time limits.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{new_wiring, non_pappus_9};
use crate::constructions::{build_ga, expand_weighted, pcr_value, subdivide_for_straightening};
use crate::drawing::{
    detect_clam, find_extension_with, scan_clams, verify_witness, Drawing, ExtensionOutcome, SearchOptions, TwoPath,
};
use crate::fixtures;
use crate::graph::{complete, complete_bipartite, WeightedGraph};
use crate::oracle::{crossing_number, OracleOptions};
use crate::plmodel::PseudolinearModel;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {:<14} {}  {} ({:.3} s, limit {} s)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.seconds,
            self.limit_seconds
        )
    }
}

#[derive(Debug, Clone)]
pub struct AcceptanceOptions {
    pub extension_budget: u64,
    pub oracle: OracleOptions,
    /// Number of random drawings for the certificate round trip.
    pub samples: usize,
    pub seed: u64,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        Self {
            extension_budget: SearchOptions::default().budget,
            oracle: OracleOptions::default(),
            samples: 24,
            seed: 7,
        }
    }
}

type Check = fn(&AcceptanceOptions) -> Result<String, String>;

const CRITERIA: [(&str, f64, Check); 9] = [
    ("ga-count", 3.0, ga_count),
    ("ga-structure", 1.0, ga_structure),
    ("clam", 5.0, clam),
    ("extension", 30.0, extension),
    ("certificate", 60.0, certificate),
    ("expansion", 1.0, expansion),
    ("oracle", 600.0, oracle),
    ("subdivision", 120.0, subdivision),
    ("good-drawing", 1.0, good_drawing),
];

/// Runs criterion `id` (1-based).
pub fn run(id: usize, opts: &AcceptanceOptions) -> CriterionResult {
    let (name, limit, check) = CRITERIA[id - 1];
    let t = Instant::now();
    let outcome = check(opts);
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(s) => (true, s),
        Err(s) => (false, s),
    };
    if elapsed > Duration::from_secs_f64(limit) {
        passed = false;
        detail.push_str("; over the time limit");
    }
    CriterionResult { id, name, passed, detail, seconds: elapsed.as_secs_f64(), limit_seconds: limit }
}

pub fn run_all(opts: &AcceptanceOptions) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run(id, opts)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// one second per value of m
fn ga_count(_: &AcceptanceOptions) -> Result<String, String> {
    let arr = non_pappus_9();
    let mut got = Vec::new();
    for m in 1..=3u64 {
        let t = Instant::now();
        let ga = build_ga(&arr, m).map_err(|e| e.to_string())?;
        let count = ga.drawing.weighted_crossing_count();
        ensure(count == 36 * (1 + 4 * m), || format!("m={m}: weighted count {count}"))?;
        ensure(t.elapsed() < Duration::from_secs(1), || format!("m={m} took {:?}", t.elapsed()))?;
        got.push(count.to_string());
    }
    Ok(format!("weighted counts {}", got.join("/")))
}

fn ga_structure(_: &AcceptanceOptions) -> Result<String, String> {
    let two = new_wiring(2, &[1]).map_err(|e| e.to_string())?;
    let nine = non_pappus_9();
    let mut n = 0;
    for arr in [&two, &nine] {
        let s = arr.wires();
        for m in 1..=2 {
            let t = build_ga(arr, m).map_err(|e| e.to_string())?.tally();
            let pairs = s * (s - 1) / 2;
            ensure(t.black == 0 && t.blue_blue == 0 && t.red_red == pairs && t.red_blue == 2 * s * (s - 1), || {
                format!("s={s} m={m}: {t:?}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} canonical drawings tallied"))
}

fn extend(d: &Drawing, opts: &AcceptanceOptions) -> Result<ExtensionOutcome, String> {
    let search = SearchOptions { budget: opts.extension_budget, ..SearchOptions::default() };
    find_extension_with(d, &search).map_err(|e| e.to_string())
}

fn clam(opts: &AcceptanceOptions) -> Result<String, String> {
    let d = fixtures::clam();
    let v = |l: &str| d.graph().vertex(l).unwrap();
    let p = TwoPath::new(v("p1"), v("u"), v("p2"));
    let q = TwoPath::new(v("q1"), v("v"), v("q2"));
    ensure(detect_clam(&d, p, q).map_err(|e| e.to_string())?, || "clam not detected".into())?;
    let found = scan_clams(&d).len();
    ensure(found == 1, || format!("scan found {found} pairs"))?;
    let out = extend(&d, opts)?;
    ensure(matches!(out, ExtensionOutcome::Infeasible), || format!("extension search: {}", out.label()))?;
    Ok("clam detected, 1 pair, extension infeasible".into())
}

fn extension(opts: &AcceptanceOptions) -> Result<String, String> {
    let ga = build_ga(&new_wiring(2, &[1]).unwrap(), 1).map_err(|e| e.to_string())?;
    for (name, d) in [("K4", fixtures::straight_k4()), ("K5", fixtures::straight_k5()), ("G_A(2,1)", ga.drawing)] {
        let out = extend(&d, opts)?;
        let w = out.witness().ok_or_else(|| format!("{name}: {}", out.label()))?;
        verify_witness(&d, w).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("verified witnesses for K4, K5, G_A(2,1)".into())
}

fn certificate(opts: &AcceptanceOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut total = 0;
    for i in 0..opts.samples {
        let n = 4 + i % 3;
        let extra = (i * 7) % (n * (n - 1) / 2 - (n - 1) + 1);
        let d = fixtures::random_straight(&mut rng, n, extra);
        let tag = || format!("sample {i} ({} vertices, {} edges)", n, d.graph().edge_count());
        let out = extend(&d, opts)?;
        let w = out.witness().ok_or_else(|| format!("{}: {}", tag(), out.label()))?;
        let mdl = PseudolinearModel::from_drawing(&d, w).map_err(|e| format!("{}: {e}", tag()))?;
        let report = mdl.verify();
        ensure(report.passes(), || format!("{}: {:?}", tag(), report.problems))?;
        let special = mdl.special_vertices().map_err(|e| e.to_string())?.len();
        ensure(special == d.crossing_count(), || {
            format!("{}: {special} special, {} crossings", tag(), d.crossing_count())
        })?;
        let back = mdl.to_drawing().map_err(|e| format!("{}: {e}", tag()))?;
        ensure(back.crossing_count() == d.crossing_count(), || {
            format!("{}: back to {} crossings", tag(), back.crossing_count())
        })?;
        ensure(back.graph().labeled_edge_set() == d.graph().labeled_edge_set(), || {
            format!("{}: graph changed", tag())
        })?;
        total += d.crossing_count();
    }
    Ok(format!("{} drawings, {total} crossings in total, all round trips exact", opts.samples))
}

fn expansion(_: &AcceptanceOptions) -> Result<String, String> {
    let ga = build_ga(&new_wiring(2, &[1]).unwrap(), 2).map_err(|e| e.to_string())?;
    let (_, d) = expand_weighted(&ga.graph, Some(&ga.drawing)).map_err(|e| e.to_string())?;
    let big = d.unwrap().crossing_count() as u64;
    ensure(big == pcr_value(2, 2), || format!("G_A(2,2) expands to {big} crossings"))?;
    let pair = fixtures::weighted_pair();
    let wg = WeightedGraph::new(pair.graph().clone(), pair.weights().to_vec(), pair.colors().to_vec())
        .map_err(|e| e.to_string())?;
    let (_, d) = expand_weighted(&wg, Some(&pair)).map_err(|e| e.to_string())?;
    let small = d.unwrap().crossing_count();
    ensure(small == 6, || format!("weights 2x3 expand to {small} crossings"))?;
    Ok(format!("G_A(2,2) -> {big}, 2x3 pair -> {small}"))
}

fn oracle(opts: &AcceptanceOptions) -> Result<String, String> {
    let cases =
        [("K4", complete(4), 0), ("K5", complete(5), 1), ("K3,3", complete_bipartite(3, 3), 1), ("K6", complete(6), 3)];
    for (name, g, want) in cases {
        let got = crossing_number(&g, &opts.oracle).value();
        ensure(got == Some(want), || format!("{name}: {got:?}"))?;
    }
    Ok("K4=0 K5=1 K3,3=1 K6=3".into())
}

fn subdivision(opts: &AcceptanceOptions) -> Result<String, String> {
    let d = fixtures::straight_k5();
    let s = subdivide_for_straightening(&d).map_err(|e| e.to_string())?;
    let twice: Vec<usize> = s.per_edge.iter().copied().filter(|&k| k > 0).collect();
    ensure(twice == [2, 2], || format!("subdivisions per edge {:?}", s.per_edge))?;
    ensure(s.drawing.crossing_count() == d.crossing_count(), || "crossing count changed".into())?;
    let bound = 2 * d.graph().edge_count();
    ensure(s.max_per_edge() <= bound, || format!("{} > {bound}", s.max_per_edge()))?;
    let cr = crossing_number(&s.graph, &opts.oracle).value();
    ensure(cr == Some(1), || format!("oracle on the subdivided graph: {cr:?}"))?;
    Ok("2 edges subdivided twice, 1 crossing kept, oracle 1".into())
}

fn good_drawing(_: &AcceptanceOptions) -> Result<String, String> {
    let r = fixtures::self_crossing().is_good();
    ensure(!r.self_crossings.is_empty() && r.adjacent_crossings.is_empty() && r.double_crossings.is_empty(), || {
        format!("self-crossing fixture: {r:?}")
    })?;
    let r = fixtures::adjacent_crossing().is_good();
    ensure(r.self_crossings.is_empty() && !r.adjacent_crossings.is_empty() && r.double_crossings.is_empty(), || {
        format!("adjacent fixture: {r:?}")
    })?;
    let r = fixtures::double_crossing().is_good();
    ensure(r.self_crossings.is_empty() && r.adjacent_crossings.is_empty() && !r.double_crossings.is_empty(), || {
        format!("double fixture: {r:?}")
    })?;
    Ok("self, adjacent and double crossings diagnosed".into())
}
