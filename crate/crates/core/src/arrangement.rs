//! Simple pseudoline arrangements as wiring diagrams.
//!
//! Wires are labeled `1..=s` from top to bottom at the left end. Each switch
//! `p` (in `1..s`) exchanges the wires currently on rows `p` and `p + 1`;
//! there is one switch per layer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("switch {index} at position {position} is outside 1..{wires}")]
    InvalidSwitch { index: usize, position: usize, wires: usize },
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("need at least one wire")]
    NoWires,
}

/// A validated simple wiring diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WiringJson", into = "WiringJson")]
pub struct WiringDiagram {
    wires: usize,
    switches: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WiringJson {
    pub wires: usize,
    pub switches: Vec<usize>,
}

impl TryFrom<WiringJson> for WiringDiagram {
    type Error = ArrangementError;

    fn try_from(j: WiringJson) -> Result<Self, Self::Error> {
        new_wiring(j.wires, &j.switches)
    }
}

impl From<WiringDiagram> for WiringJson {
    fn from(d: WiringDiagram) -> Self {
        WiringJson { wires: d.wires, switches: d.switches }
    }
}

/// Swap count of one pair of wires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub pair: (usize, usize),
    pub swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub wires: usize,
    pub switches: usize,
    pub out_of_range: Vec<usize>,
    pub pairs: Vec<PairCount>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.out_of_range.is_empty() && self.pairs.iter().all(|p| p.swaps == 1)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.out_of_range.iter().map(|&i| format!("switch {i} is out of range")).collect();
        for p in &self.pairs {
            if p.swaps != 1 {
                out.push(format!("pair {{{},{}}} swaps {} times", p.pair.0, p.pair.1, p.swaps));
            }
        }
        out
    }
}

/// Counts swaps per pair for an arbitrary switch sequence.
pub fn validate_raw(wires: usize, switches: &[usize]) -> ValidationReport {
    let mut rows: Vec<usize> = (1..=wires).collect();
    let mut count = vec![vec![0usize; wires + 1]; wires + 1];
    let mut out_of_range = Vec::new();
    for (i, &p) in switches.iter().enumerate() {
        if p == 0 || p >= wires {
            out_of_range.push(i);
            continue;
        }
        let (a, b) = (rows[p - 1], rows[p]);
        count[a.min(b)][a.max(b)] += 1;
        rows.swap(p - 1, p);
    }
    let mut pairs = Vec::new();
    for i in 1..=wires {
        for j in i + 1..=wires {
            pairs.push(PairCount { pair: (i, j), swaps: count[i][j] });
        }
    }
    ValidationReport { wires, switches: switches.len(), out_of_range, pairs }
}

pub fn new_wiring(wires: usize, switches: &[usize]) -> Result<WiringDiagram, ArrangementError> {
    if wires == 0 {
        return Err(ArrangementError::NoWires);
    }
    if let Some((index, &position)) = switches.iter().enumerate().find(|(_, &p)| p == 0 || p >= wires) {
        return Err(ArrangementError::InvalidSwitch { index, position, wires });
    }
    let report = validate_raw(wires, switches);
    if !report.passes() {
        return Err(ArrangementError::NotSimple(report.failures().join("; ")));
    }
    Ok(WiringDiagram { wires, switches: switches.to_vec() })
}

impl WiringDiagram {
    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn switches(&self) -> &[usize] {
        &self.switches
    }

    pub fn crossing_count(&self) -> usize {
        self.switches.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_raw(self.wires, &self.switches)
    }

    /// Wire labels on rows `1..=s` before layer `layer` (so `rows_at(0)` is
    /// `1, 2, ..., s`).
    pub fn rows_at(&self, layer: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = (1..=self.wires).collect();
        for &p in &self.switches[..layer] {
            rows.swap(p - 1, p);
        }
        rows
    }

    /// One entry per layer: the two wires crossing there, smaller label first.
    pub fn crossing_list(&self) -> Vec<(usize, (usize, usize))> {
        let mut rows: Vec<usize> = (1..=self.wires).collect();
        let mut out = Vec::with_capacity(self.switches.len());
        for (layer, &p) in self.switches.iter().enumerate() {
            let (a, b) = (rows[p - 1], rows[p]);
            out.push((layer, (a.min(b), a.max(b))));
            rows.swap(p - 1, p);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

const NON_PAPPUS: &str = include_str!("../data/non_pappus_9.json");

/// A simple 9-wire arrangement violating Pappus's theorem, and therefore not
/// stretchable.
pub fn non_pappus_9() -> WiringDiagram {
    WiringDiagram::from_json(NON_PAPPUS).expect("bundled arrangement is valid")
}

/// The arrangement with `s` wires whose switches sweep wire 1 down to the
/// bottom, then wire 2, and so on. Stretchable for every `s`.
pub fn cyclic(s: usize) -> WiringDiagram {
    let mut switches = Vec::new();
    for k in 0..s.saturating_sub(1) {
        for p in 1..s - k {
            switches.push(p);
        }
    }
    new_wiring(s.max(1), &switches).expect("bubble sort reverses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagrams() {
        assert_eq!(new_wiring(1, &[]).unwrap().crossing_count(), 0);
        assert_eq!(new_wiring(2, &[1]).unwrap().crossing_count(), 1);
        assert_eq!(new_wiring(3, &[1, 2, 1]).unwrap().crossing_count(), 3);
        assert!(matches!(new_wiring(3, &[1, 3]), Err(ArrangementError::InvalidSwitch { .. })));
        assert!(matches!(new_wiring(3, &[1, 1, 2]), Err(ArrangementError::NotSimple(_))));
    }

    #[test]
    fn double_swap_report() {
        let r = validate_raw(3, &[1, 1, 2]);
        assert!(!r.passes());
        assert_eq!(r.pairs.iter().find(|p| p.pair == (1, 2)).unwrap().swaps, 2);
        assert_eq!(r.pairs.iter().find(|p| p.pair == (1, 3)).unwrap().swaps, 0);
    }

    #[test]
    fn crossing_lists() {
        assert_eq!(new_wiring(2, &[1]).unwrap().crossing_list(), vec![(0, (1, 2))]);
        assert_eq!(new_wiring(3, &[1, 2, 1]).unwrap().crossing_list(), vec![(0, (1, 2)), (1, (1, 3)), (2, (2, 3))]);
    }

    #[test]
    fn non_pappus_is_simple() {
        let d = non_pappus_9();
        assert_eq!(d.wires(), 9);
        assert_eq!(d.crossing_count(), 36);
        assert!(d.validate().passes());
        assert_eq!(d.rows_at(0), (1..=9).collect::<Vec<_>>());
        assert_eq!(d.rows_at(36), (1..=9).rev().collect::<Vec<_>>());
    }

    #[test]
    fn json_round_trip() {
        let d = cyclic(5);
        assert_eq!(WiringDiagram::from_json(&d.to_json()).unwrap(), d);
        assert!(WiringDiagram::from_json(r#"{"wires":3,"switches":[1,1]}"#).is_err());
    }
}
