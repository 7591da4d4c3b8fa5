//! Shared instance setup for the criterion benchmarks.

use tdcut::{prepare, random_instance, InstanceParams, NiceTreeDecomposition, WeightedDigraph};

/// A prepared benchmark instance of `n` vertices and width at most `width`.
pub fn instance(seed: u64, n: usize, width: usize) -> (WeightedDigraph, NiceTreeDecomposition) {
    let params = InstanceParams {
        n,
        max_width: width,
        arc_density: 0.6,
        weight_range: (0, 10),
        directed: false,
    };
    let (g, td) = random_instance(seed, &params);
    let nice = prepare(&g, &td).expect("generated decompositions are valid");
    (g, nice)
}
