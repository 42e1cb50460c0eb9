//! Seed-selection algorithms.
//!
//! MSS builds a full-influenceability seed set by iteratively deleting nodes
//! the remaining graph can still influence; SIM trims the MSS set down to a
//! budget by repeatedly dropping the seed whose removal costs the least
//! influence. The hill-climbing greedy baseline and an exhaustive optimum
//! round out the benchmark suite.

use std::time::Instant;

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::cascade::sigma;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, SeedSet};
use crate::structure::{deficient_count_excluding, nontrivial_components_excluding};
use crate::Weight;

/// Subset-count budget for the exhaustive optimum.
pub const DEFAULT_ENUM_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mss,
    Sim,
    Greedy,
    Opt,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Algorithm::Mss => "mss",
            Algorithm::Sim => "sim",
            Algorithm::Greedy => "greedy",
            Algorithm::Opt => "opt",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mss" => Ok(Algorithm::Mss),
            "sim" => Ok(Algorithm::Sim),
            "greedy" => Ok(Algorithm::Greedy),
            "opt" => Ok(Algorithm::Opt),
            other => Err(Error::Validation(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Outcome of one solver run. `sigma` is always recomputed by the cascade
/// engine on the input graph; `removal_sequence` (MSS only) lists the
/// deleted nodes in deletion order and is a permutation of `V \ seeds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub algorithm: Algorithm,
    pub seeds: SeedSet,
    pub sigma: usize,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rng_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub removal_sequence: Option<Vec<NodeId>>,
}

/// Minimum-seed-selection heuristic for full influenceability.
///
/// Repeatedly deletes one node that the rest of the current graph could
/// influence, choosing among candidates by (1) smallest total incident
/// weight, (2) fewest non-trivial weak components after deletion, (3) fewest
/// deficient nodes after deletion, then a seeded uniform pick. Whatever
/// survives is the seed set; replaying the deletions in reverse is exactly a
/// diffusion from it, so full influenceability holds by construction.
pub fn mss<W: Weight>(graph: &Graph<W>, rng_seed: u64) -> SolverReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut g = graph.clone();
    let mut removal_sequence: Vec<NodeId> = Vec::new();

    // Influenceable nodes. Deletions only lower in-weights, so membership
    // can only be lost; after deleting q, only q's out-neighbors need
    // rechecking.
    let mut influenceable: BTreeSet<NodeId> = g
        .nodes()
        .filter(|&u| g.barricade(u) <= g.total_in_weight(u))
        .collect();

    while !influenceable.is_empty() {
        let mut candidates: Vec<NodeId> = influenceable.iter().copied().collect();
        if candidates.len() > 1 {
            let incident = |u: NodeId| g.total_in_weight(u) + g.total_out_weight(u);
            let best = candidates
                .iter()
                .map(|&u| incident(u))
                .fold(W::infinity(), W::min);
            candidates.retain(|&u| incident(u) == best);
        }
        if candidates.len() > 1 {
            let counts: Vec<usize> = candidates
                .iter()
                .map(|&u| nontrivial_components_excluding(&g, Some(u)))
                .collect();
            let best = *counts.iter().min().expect("nonempty");
            let keep: Vec<NodeId> = candidates
                .iter()
                .zip(&counts)
                .filter(|&(_, &c)| c == best)
                .map(|(&u, _)| u)
                .collect();
            candidates = keep;
        }
        if candidates.len() > 1 {
            let counts: Vec<usize> = candidates
                .iter()
                .map(|&u| deficient_count_excluding(&g, u))
                .collect();
            let best = *counts.iter().min().expect("nonempty");
            let keep: Vec<NodeId> = candidates
                .iter()
                .zip(&counts)
                .filter(|&(_, &c)| c == best)
                .map(|(&u, _)| u)
                .collect();
            candidates = keep;
        }
        let victim = if candidates.len() == 1 {
            candidates[0]
        } else {
            candidates[rng.gen_range(0..candidates.len())]
        };

        influenceable.remove(&victim);
        let downstream: Vec<NodeId> = g.out_neighbors(victim).map(|(v, _)| v).collect();
        g.remove_node_mut(victim);
        removal_sequence.push(victim);
        for v in downstream {
            if influenceable.contains(&v) && g.barricade(v) > g.total_in_weight(v) {
                influenceable.remove(&v);
            }
        }
    }

    let seeds: SeedSet = g.nodes().collect();
    let sigma = sigma(graph, &seeds).expect("surviving nodes are alive in the input graph");
    SolverReport {
        algorithm: Algorithm::Mss,
        seeds,
        sigma,
        wall_time_s: start.elapsed().as_secs_f64(),
        rng_seed: Some(rng_seed),
        removal_sequence: Some(removal_sequence),
    }
}

/// Budgeted seed selection: trims the MSS set down to `k` seeds by
/// repeatedly dropping the seed whose removal keeps sigma largest
/// (ties to the smallest node id).
pub fn sim<W: Weight>(graph: &Graph<W>, k: usize, rng_seed: u64) -> SolverReport {
    let start = Instant::now();
    let mut seeds = mss(graph, rng_seed).seeds;
    while seeds.len() > k {
        let mut best: Option<(usize, NodeId)> = None;
        for u in seeds.iter() {
            let mut trimmed = seeds.clone();
            trimmed.remove(u);
            let value = sigma(graph, &trimmed).expect("seeds remain valid");
            if best.map_or(true, |(b, _)| value > b) {
                best = Some((value, u));
            }
        }
        let (_, drop) = best.expect("seed set nonempty while above budget");
        seeds.remove(drop);
    }
    let sigma = sigma(graph, &seeds).expect("seeds valid");
    SolverReport {
        algorithm: Algorithm::Sim,
        seeds,
        sigma,
        wall_time_s: start.elapsed().as_secs_f64(),
        rng_seed: Some(rng_seed),
        removal_sequence: None,
    }
}

fn greedy_impl<W: Weight>(graph: &Graph<W>, budget: Option<usize>) -> SolverReport {
    let start = Instant::now();
    let total = graph.node_count();
    let mut seeds = SeedSet::new();
    let mut current = sigma(graph, &seeds).expect("empty seed set is valid");
    loop {
        if let Some(k) = budget {
            if seeds.len() >= k {
                break;
            }
        } else if current == total {
            break;
        }
        if seeds.len() == total {
            break;
        }
        // Ascending scan with strict improvement keeps the smallest id on
        // ties; an all-zero-gain round (already fully influenced) then adds
        // the smallest-id non-seed, which fills the budget but cannot hurt.
        let mut best: Option<(usize, NodeId)> = None;
        for u in graph.nodes().filter(|&u| !seeds.contains(u)) {
            let mut extended = seeds.clone();
            extended.insert(u);
            let value = sigma(graph, &extended).expect("candidate is alive");
            if best.map_or(true, |(b, _)| value > b) {
                best = Some((value, u));
            }
        }
        let Some((value, pick)) = best else { break };
        seeds.insert(pick);
        current = value;
    }
    SolverReport {
        algorithm: Algorithm::Greedy,
        seeds,
        sigma: current,
        wall_time_s: start.elapsed().as_secs_f64(),
        rng_seed: None,
        removal_sequence: None,
    }
}

/// Hill-climbing baseline: adds the node with the maximum marginal influence
/// gain (ties to the smallest id) until the budget `k` is spent.
pub fn greedy<W: Weight>(graph: &Graph<W>, k: usize) -> SolverReport {
    greedy_impl(graph, Some(k))
}

/// Unbounded greedy: stops as soon as every node is active.
pub fn greedy_full<W: Weight>(graph: &Graph<W>) -> SolverReport {
    greedy_impl(graph, None)
}

/// Exhaustive optimum over seed sets of size `min(k, n)`; monotonicity makes
/// smaller sets redundant. Ties go to the lexicographically smallest set.
pub fn optimal_exhaustive<W: Weight>(
    graph: &Graph<W>,
    k: usize,
    max_nodes: usize,
) -> Result<SolverReport> {
    let start = Instant::now();
    let total = graph.node_count();
    if total > max_nodes {
        return Err(Error::SizeGuard {
            nodes: total,
            guard: max_nodes,
        });
    }
    let size = k.min(total);
    let subsets = binomial(total as u128, size as u128);
    if subsets > DEFAULT_ENUM_BUDGET {
        return Err(Error::EnumerationBudget {
            subsets,
            budget: DEFAULT_ENUM_BUDGET,
        });
    }
    let nodes: Vec<NodeId> = graph.nodes().collect();
    let mut best: Option<(usize, SeedSet)> = None;
    for combo in nodes.iter().combinations(size) {
        let seeds: SeedSet = combo.into_iter().copied().collect();
        let value = sigma(graph, &seeds)?;
        if best.as_ref().map_or(true, |&(b, _)| value > b) {
            let done = value == total;
            best = Some((value, seeds));
            if done {
                break;
            }
        }
    }
    let (value, seeds) = best.unwrap_or((0, SeedSet::new()));
    Ok(SolverReport {
        algorithm: Algorithm::Opt,
        seeds,
        sigma: value,
        wall_time_s: start.elapsed().as_secs_f64(),
        rng_seed: None,
        removal_sequence: None,
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::is_fully_influenced;
    use crate::structure::influence_deficient;

    fn p3() -> Graph<f64> {
        let mut g = Graph::bidirectional(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        g.set_barricade(0, 1.0).unwrap();
        g.set_barricade(1, 2.0).unwrap();
        g.set_barricade(2, 1.0).unwrap();
        g
    }

    fn isolated_pair() -> Graph<f64> {
        let mut g = Graph::<f64>::new(2);
        g.set_all_barricades(1.0).unwrap();
        g
    }

    #[test]
    fn mss_on_p3_keeps_the_center() {
        for seed in 0..10 {
            let report = mss(&p3(), seed);
            assert_eq!(report.seeds.to_vec(), vec![1]);
            assert_eq!(report.sigma, 3);
            let mut removed = report.removal_sequence.clone().unwrap();
            removed.sort_unstable();
            assert_eq!(removed, vec![0, 2]);
        }
    }

    #[test]
    fn mss_on_isolated_pair_selects_everything() {
        let report = mss(&isolated_pair(), 0);
        assert_eq!(report.seeds.to_vec(), vec![0, 1]);
        assert_eq!(report.removal_sequence.as_deref(), Some(&[][..]));
    }

    #[test]
    fn mss_on_all_deficient_graph() {
        let mut g = Graph::bidirectional(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        g.set_all_barricades(100.0).unwrap();
        let report = mss(&g, 3);
        assert_eq!(report.seeds.len(), 4);
        assert!(report.removal_sequence.unwrap().is_empty());
    }

    #[test]
    fn mss_always_reaches_full_influenceability() {
        let g = Graph::bidirectional(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 0, 1.0)],
        )
        .map(|mut g| {
            g.set_all_barricades(2.0).unwrap();
            g
        })
        .unwrap();
        for seed in 0..20 {
            let report = mss(&g, seed);
            assert!(is_fully_influenced(&g, &report.seeds).unwrap());
            assert!(influence_deficient(&g)
                .deficient
                .iter()
                .all(|&u| report.seeds.contains(u)));
        }
    }

    #[test]
    fn mss_is_deterministic_per_seed() {
        let g = Graph::bidirectional(
            5,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 0, 1.0)],
        )
        .map(|mut g| {
            g.set_all_barricades(2.0).unwrap();
            g
        })
        .unwrap();
        let a = mss(&g, 42);
        let b = mss(&g, 42);
        assert_eq!(a.seeds, b.seeds);
        assert_eq!(a.removal_sequence, b.removal_sequence);
    }

    #[test]
    fn sim_on_p3_with_budget_one() {
        let report = sim(&p3(), 1, 0);
        assert_eq!(report.seeds.to_vec(), vec![1]);
        assert_eq!(report.sigma, 3);
    }

    #[test]
    fn sim_breaks_ties_toward_smaller_id() {
        let report = sim(&isolated_pair(), 1, 0);
        assert_eq!(report.seeds.to_vec(), vec![1]);
        assert_eq!(report.sigma, 1);
    }

    #[test]
    fn sim_with_large_budget_returns_mss_set() {
        let g = p3();
        let report = sim(&g, 10, 7);
        assert_eq!(report.seeds, mss(&g, 7).seeds);
        assert_eq!(report.sigma, 3);
    }

    #[test]
    fn greedy_on_p3() {
        let one = greedy(&p3(), 1);
        assert_eq!(one.seeds.to_vec(), vec![1]);
        assert_eq!(one.sigma, 3);
        // Second pick has zero gain everywhere; the smallest remaining id
        // fills the budget.
        let two = greedy(&p3(), 2);
        assert_eq!(two.seeds.to_vec(), vec![0, 1]);
        assert_eq!(two.sigma, 3);
    }

    #[test]
    fn greedy_full_on_all_deficient_graph() {
        let mut g = Graph::<f64>::new(3);
        g.set_all_barricades(5.0).unwrap();
        let report = greedy_full(&g);
        assert_eq!(report.seeds.len(), 3);
        assert_eq!(report.sigma, 3);
    }

    #[test]
    fn greedy_budget_is_respected() {
        let g = Graph::bidirectional(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0)],
        )
        .map(|mut g| {
            g.set_all_barricades(2.0).unwrap();
            g
        })
        .unwrap();
        for k in 1..=6 {
            assert!(greedy(&g, k).seeds.len() <= k);
            assert!(sim(&g, k, 1).seeds.len() <= k);
        }
    }

    #[test]
    fn optimal_on_p3() {
        let one = optimal_exhaustive(&p3(), 1, 16).unwrap();
        assert_eq!(one.seeds.to_vec(), vec![1]);
        assert_eq!(one.sigma, 3);
        let two = optimal_exhaustive(&p3(), 2, 16).unwrap();
        assert_eq!(two.seeds.to_vec(), vec![0, 1]);
        assert_eq!(two.sigma, 3);
        let cover = optimal_exhaustive(&p3(), 3, 16).unwrap();
        assert_eq!(cover.sigma, 3);
    }

    #[test]
    fn optimal_respects_guards() {
        let g = Graph::<f64>::new(20);
        assert!(matches!(
            optimal_exhaustive(&g, 1, 16),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn baselines_never_beat_the_optimum_on_p3() {
        let g = p3();
        for k in 1..=3 {
            let best = optimal_exhaustive(&g, k, 16).unwrap().sigma;
            assert!(sim(&g, k, 3).sigma <= best);
            assert!(greedy(&g, k).sigma <= best);
        }
    }

    #[test]
    fn report_serialization_shape() {
        let report = mss(&p3(), 5);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["algorithm"], "mss");
        assert_eq!(json["seeds"], serde_json::json!([1]));
        assert_eq!(json["sigma"], 3);
        assert_eq!(json["rng_seed"], 5);
        assert!(json["wall_time_s"].is_number());
        let sim_json = serde_json::to_value(sim(&p3(), 1, 0)).unwrap();
        assert!(sim_json.get("removal_sequence").is_none());
    }
}
