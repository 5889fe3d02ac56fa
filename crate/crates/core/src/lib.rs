//! Pseudolinear drawings, pseudoline extensions and crossing numbers.

#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod arrangement;
pub mod constructions;
pub mod drawing;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod planar_map;
pub mod plmodel;

pub use drawing::{
    detect_clam, find_extension, find_extension_with, scan_clams, verify_witness, ArrNode, Curve, Drawing,
    DrawingError, DrawingJson, ExtensionOutcome, ExtensionWitness, NodeKind, Point, PolylineDrawing, SearchOptions,
    TwoPath,
};
pub use graph::{EdgeColor, Graph, GraphError, WeightedGraph};
pub use planar_map::{Dart, PlanarMap};
pub use plmodel::{ModelError, ModelJson, ModelReport, PseudolinearModel};
