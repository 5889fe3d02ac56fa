//! Prints the bundled non-Pappus arrangement as JSON.
//!
//! cargo run -p pcr-core --example regen_non_pappus > crates/core/data/non_pappus_9.json

#[path = "../tests/support/pappus.rs"]
mod pappus;

fn main() {
    let g = pappus::generate();
    let switches: Vec<String> = g.non_pappus.iter().map(|p| p.to_string()).collect();
    println!("{{\"wires\": 9, \"switches\": [{}]}}", switches.join(", "));
}
