//! Shared fixtures for the benchmark targets.

use patrol_core::graph::{generate_er, ErConfig, Graph, RngSeed};

/// A connected non-Eulerian benchmark graph with lengths in (0, 10].
pub fn ensemble_graph(nodes: usize, edge_probability: f64, seed: u64) -> Graph {
    generate_er(&ErConfig::new(nodes, edge_probability), RngSeed(seed))
        .expect("benchmark ensemble generation")
}
