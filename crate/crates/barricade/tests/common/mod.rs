//! Shared reference implementations for integration tests.
//!
//! These deliberately retrace nothing from the library's hot paths: the
//! fixed point is found by full sweeps over all nodes until nothing changes,
//! and the minimum seed set by raw subset enumeration with no pruning.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use barricade::generators::{generate, GenModel, GenSpec};
use barricade::{Graph64, NodeId};

/// Synchronous repeat-until-stable sweep: every inactive node is retested
/// against the full active set each round.
pub fn naive_fixed_point(graph: &Graph64, seeds: &BTreeSet<NodeId>) -> BTreeSet<NodeId> {
    let mut active = seeds.clone();
    loop {
        let mut next = active.clone();
        for u in graph.nodes() {
            if active.contains(&u) {
                continue;
            }
            let sum: f64 = graph
                .in_neighbors(u)
                .filter(|(z, _)| active.contains(z))
                .map(|(_, w)| w)
                .sum();
            if sum >= graph.barricade(u) {
                next.insert(u);
            }
        }
        if next == active {
            return active;
        }
        active = next;
    }
}

pub fn naive_sigma(graph: &Graph64, seeds: &BTreeSet<NodeId>) -> usize {
    naive_fixed_point(graph, seeds).len()
}

/// Smallest full-influenceability seed set by brute enumeration in size
/// then lexicographic order. No deficiency pruning.
pub fn naive_min_full_seed(graph: &Graph64) -> BTreeSet<NodeId> {
    let nodes: Vec<NodeId> = graph.nodes().collect();
    let total = nodes.len();
    for size in 0..=total {
        for combo in nodes.iter().combinations(size) {
            let seeds: BTreeSet<NodeId> = combo.into_iter().copied().collect();
            if naive_sigma(graph, &seeds) == total {
                return seeds;
            }
        }
    }
    unreachable!("seeding every node always reaches every node");
}

/// A random small graph drawn across all three generator models with varied
/// weight and barricade ranges (including the zero-barricade and
/// all-deficient extremes).
pub fn random_graph(seed: u64, max_n: usize) -> Graph64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let model = match rng.gen_range(0..3) {
        0 => GenModel::Rg,
        1 => GenModel::Er,
        _ => GenModel::PowerLaw,
    };
    let density_target = match model {
        GenModel::Rg => rng.gen_range(0.0..(n * (n - 1)) as f64),
        GenModel::Er => rng.gen_range(0.0..=1.0),
        GenModel::PowerLaw => rng.gen_range(1.5..3.5),
    };
    let weight_range = match rng.gen_range(0..3) {
        0 => [1.0, 1.0],
        1 => [1.0, 2.0],
        _ => [0.5, 3.0],
    };
    let barricade_range = match rng.gen_range(0..4) {
        0 => [0.0, 0.0],
        1 => [0.0, 2.0],
        2 => [1.0, 4.0],
        _ => [50.0, 60.0], // far above any attainable in-weight
    };
    let spec = GenSpec {
        model,
        n,
        density_target,
        weight_range,
        barricade_range,
        rng_seed: seed,
    };
    generate(&spec).expect("test spec is valid")
}

/// A random subset of the graph's nodes.
pub fn random_seed_set(graph: &Graph64, seed: u64) -> BTreeSet<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.gen_range(0.0..=1.0);
    graph
        .nodes()
        .filter(|_| rng.gen::<f64>() < density)
        .collect()
}
