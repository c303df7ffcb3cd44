//! Shared inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbr_core::generate::{random_graph, GraphShape};
use rbr_core::RbrGraph;

/// A reproducible random graph with sparse beliefs.
pub fn seeded_graph(nodes: usize, agents: usize, seed: u64) -> RbrGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = GraphShape::new(nodes, agents);
    shape.edge_probability = 0.3;
    random_graph(&mut rng, shape)
}
