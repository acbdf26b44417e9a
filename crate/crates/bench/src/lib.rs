//! Shared fixtures for the criterion benchmarks.

use rrlab_core::{generate_family, GraphFamily, GraphFamilySpec, GraphOracle};

pub fn family_oracle(family: GraphFamily, size: usize) -> GraphOracle {
    let spec = GraphFamilySpec::new(family, size);
    let graph = generate_family(&spec).expect("bench fixture sizes are in range");
    GraphOracle::with_label(graph, spec.label())
}
