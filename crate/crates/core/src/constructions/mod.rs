//! Gadget graphs and graph transformations.

mod expand;
mod ga;
mod subdivide;
mod substitute;

pub use expand::{expand_drawing, expand_graph, expand_weighted};
pub use ga::{black_weight, build_ga, pcr_value, rcr_lower_bound, GaInstance, Tally};
pub use subdivide::{subdivide_for_straightening, Subdivision};
pub use substitute::{substitute_heavy, SubstituteError};
