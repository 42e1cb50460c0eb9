//! Structural analysis: influence-deficient nodes, weakly-connected
//! components, edge redundancy, and exhaustive validators for the seed-set
//! perturbation bounds under single edge/node additions.
//!
//! The exhaustive operations enumerate subsets and are guarded by a node
//! budget (default [`DEFAULT_EXHAUSTIVE_GUARD`]); they are the ground truth
//! the heuristic solvers are tested against.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::cascade::sigma;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, SeedSet};
use crate::Weight;

/// Node budget above which the exhaustive operations refuse to run.
pub const DEFAULT_EXHAUSTIVE_GUARD: usize = 16;

/// Nodes whose barricade exceeds their total in-weight. Such a node can
/// never be activated by its neighbors, so it belongs to every seed set
/// achieving full influenceability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub deficient: BTreeSet<NodeId>,
}

impl DeficiencyReport {
    pub fn contains(&self, u: NodeId) -> bool {
        self.deficient.contains(&u)
    }

    pub fn len(&self) -> usize {
        self.deficient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deficient.is_empty()
    }
}

/// Finds all influence-deficient nodes: `b_u` strictly above the summed
/// weight of all in-edges.
pub fn influence_deficient<W: Weight>(graph: &Graph<W>) -> DeficiencyReport {
    let deficient = graph
        .nodes()
        .filter(|&u| graph.barricade(u) > graph.total_in_weight(u))
        .collect();
    DeficiencyReport { deficient }
}

pub(crate) fn deficient_count_excluding<W: Weight>(graph: &Graph<W>, skip: NodeId) -> usize {
    graph
        .nodes()
        .filter(|&u| u != skip)
        .filter(|&u| {
            let in_sum = graph
                .in_neighbors(u)
                .filter(|&(z, _)| z != skip)
                .fold(W::zero(), |acc, (_, w)| acc + w);
            graph.barricade(u) > in_sum
        })
        .count()
}

pub(crate) fn nontrivial_components_excluding<W: Weight>(
    graph: &Graph<W>,
    skip: Option<NodeId>,
) -> usize {
    let mut visited = vec![false; graph.capacity()];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut count = 0;
    for start in graph.nodes() {
        if visited[start] || Some(start) == skip {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        let mut size = 0usize;
        while let Some(u) = stack.pop() {
            size += 1;
            for (v, _) in graph.out_neighbors(u).chain(graph.in_neighbors(u)) {
                if !visited[v] && Some(v) != skip {
                    visited[v] = true;
                    stack.push(v);
                }
            }
        }
        if size >= 2 {
            count += 1;
        }
    }
    count
}

/// Number of weakly connected components with at least two nodes
/// (edge direction ignored for connectivity).
pub fn nontrivial_components<W: Weight>(graph: &Graph<W>) -> usize {
    nontrivial_components_excluding(graph, None)
}

fn check_guard<W: Weight>(graph: &Graph<W>, max_nodes: usize) -> Result<()> {
    if graph.node_count() > max_nodes {
        return Err(Error::SizeGuard {
            nodes: graph.node_count(),
            guard: max_nodes,
        });
    }
    Ok(())
}

/// Enumerates seed sets in increasing size and returns a smallest one
/// achieving full influenceability; ties go to the lexicographically
/// smallest set. Deficient nodes are forced members before enumeration.
pub fn min_full_seed_exhaustive<W: Weight>(graph: &Graph<W>, max_nodes: usize) -> Result<SeedSet> {
    check_guard(graph, max_nodes)?;
    Ok(enumerate_min_full_sets(graph, false).pop().unwrap_or_default())
}

/// Every minimum-cardinality seed set achieving full influenceability, in
/// lexicographic order.
pub fn all_min_full_seed_sets<W: Weight>(
    graph: &Graph<W>,
    max_nodes: usize,
) -> Result<Vec<SeedSet>> {
    check_guard(graph, max_nodes)?;
    Ok(enumerate_min_full_sets(graph, true))
}

/// Core enumeration: forced deficient members plus lexicographic
/// combinations of the rest, by increasing size. With `all` false the first
/// success is returned alone; otherwise every success at the minimum size.
fn enumerate_min_full_sets<W: Weight>(graph: &Graph<W>, all: bool) -> Vec<SeedSet> {
    let total = graph.node_count();
    let forced: Vec<NodeId> = influence_deficient(graph).deficient.into_iter().collect();
    let candidates: Vec<NodeId> = graph.nodes().filter(|u| !forced.contains(u)).collect();
    let is_full = |extra: &[&NodeId]| -> bool {
        let seeds: SeedSet = forced
            .iter()
            .copied()
            .chain(extra.iter().copied().copied())
            .collect();
        sigma(graph, &seeds).expect("enumerated seeds are alive") == total
    };
    for extra_size in 0..=candidates.len() {
        let mut found = Vec::new();
        for combo in candidates.iter().combinations(extra_size) {
            if is_full(&combo) {
                let set: SeedSet = forced
                    .iter()
                    .copied()
                    .chain(combo.into_iter().copied())
                    .collect();
                found.push(set);
                if !all {
                    return found;
                }
            }
        }
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// True iff removing the given directed edges leaves the minimum
/// full-influenceability seed-set size unchanged.
pub fn edges_redundant<W: Weight>(
    graph: &Graph<W>,
    edges: &[(NodeId, NodeId)],
    max_nodes: usize,
) -> Result<bool> {
    check_guard(graph, max_nodes)?;
    let reduced = graph.without_edges(edges)?;
    let before = min_full_seed_exhaustive(graph, max_nodes)?.len();
    let after = min_full_seed_exhaustive(&reduced, max_nodes)?.len();
    Ok(before == after)
}

/// Lower/upper bounds on the minimum full-influenceability seed-set size of
/// a perturbed graph, together with its exhaustively computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PerturbationBound {
    pub lower: i64,
    pub upper: i64,
    pub observed: i64,
}

impl PerturbationBound {
    pub fn holds(&self) -> bool {
        self.lower <= self.observed && self.observed <= self.upper
    }
}

/// Adds the edge `v1 -> v2` (and `v2 -> v1` when `w21` is given) and checks
/// that the minimum seed-set size drops by at most one and never grows.
pub fn check_edge_addition_bound<W: Weight>(
    graph: &Graph<W>,
    v1: NodeId,
    v2: NodeId,
    w12: W,
    w21: Option<W>,
    max_nodes: usize,
) -> Result<PerturbationBound> {
    check_guard(graph, max_nodes)?;
    if graph.has_edge(v1, v2) {
        return Err(Error::Validation(format!("edge {v1} -> {v2} already present")));
    }
    let mut augmented = graph.with_edge(v1, v2, w12)?;
    if let Some(w) = w21 {
        if graph.has_edge(v2, v1) {
            return Err(Error::Validation(format!("edge {v2} -> {v1} already present")));
        }
        augmented = augmented.with_edge(v2, v1, w)?;
    }
    let before = min_full_seed_exhaustive(graph, max_nodes)?.len() as i64;
    let observed = min_full_seed_exhaustive(&augmented, max_nodes)?.len() as i64;
    let bound = PerturbationBound {
        lower: before - 1,
        upper: before,
        observed,
    };
    assert!(
        bound.holds(),
        "edge-addition bound violated: |S*| {before} -> {observed} after adding {v1} <-> {v2}"
    );
    Ok(bound)
}

/// Specification of a node to be attached to an existing graph: its
/// barricade, in-edges `(source, w)`, and out-edges `(target, w)`.
#[derive(Debug, Clone)]
pub struct NodeAddition<W> {
    pub barricade: W,
    pub in_edges: Vec<(NodeId, W)>,
    pub out_edges: Vec<(NodeId, W)>,
}

impl<W: Weight> NodeAddition<W> {
    /// Distinct neighbor ids, ascending.
    pub fn neighbors(&self) -> BTreeSet<NodeId> {
        self.in_edges
            .iter()
            .map(|&(u, _)| u)
            .chain(self.out_edges.iter().map(|&(u, _)| u))
            .collect()
    }

    /// Weight of the edge from the new node to `q`, zero if absent.
    fn weight_to(&self, q: NodeId) -> W {
        self.out_edges
            .iter()
            .find(|&&(t, _)| t == q)
            .map_or(W::zero(), |&(_, w)| w)
    }

    /// The augmented graph with this node appended.
    pub fn apply(&self, graph: &Graph<W>) -> Result<Graph<W>> {
        graph.with_node(self.barricade, &self.in_edges, &self.out_edges)
    }
}

/// Attaches `node` to the graph and checks the node-addition bounds:
/// the new minimum seed-set size lies between
/// `max(#deficient', |S*| + 1 - |N|)` and `|S*| + 1`.
pub fn check_node_addition_bound<W: Weight>(
    graph: &Graph<W>,
    node: &NodeAddition<W>,
    max_nodes: usize,
) -> Result<PerturbationBound> {
    check_guard(graph, max_nodes)?;
    let augmented = node.apply(graph)?;
    let before = min_full_seed_exhaustive(graph, max_nodes)?.len() as i64;
    let observed = min_full_seed_exhaustive(&augmented, max_nodes + 1)?.len() as i64;
    let deficient_after = influence_deficient(&augmented).len() as i64;
    let degree = node.neighbors().len() as i64;
    let bound = PerturbationBound {
        lower: deficient_after.max(before + 1 - degree),
        upper: before + 1,
        observed,
    };
    assert!(
        bound.holds(),
        "node-addition bound violated: |S*| {before}, observed {observed}, bounds [{}, {}]",
        bound.lower,
        bound.upper
    );
    Ok(bound)
}

/// A set `Q` of existing nodes whose seeding role a single added node can
/// take over, with the neighbor shell `Z` and a minimum seed set containing
/// `Q` as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSetInstance {
    pub q: BTreeSet<NodeId>,
    pub z: BTreeSet<NodeId>,
    pub witness_seed_set: SeedSet,
}

/// Searches for the largest `Q` among the prospective neighbors of an added
/// node `v` such that:
///
/// (a) some minimum full-influenceability seed set contains `Q`,
/// (b) every edge between `Q` and its outside neighbor shell `Z` is
///     redundant, and
/// (c) for each `q` in `Q`, the weight arriving from `Z` falls short of
///     `b_q` but `v`'s edge closes the gap:
///     `sum_Z W(z->q) < b_q <= W(v->q) + sum_Z W(z->q)`.
///
/// Ties among equal-size sets resolve to the lexicographically smallest.
/// Returns `None` when no nonempty `Q` qualifies.
pub fn find_q_set<W: Weight>(
    graph: &Graph<W>,
    v_spec: &NodeAddition<W>,
    max_nodes: usize,
) -> Result<Option<QSetInstance>> {
    check_guard(graph, max_nodes)?;
    for &(u, w) in v_spec.in_edges.iter().chain(v_spec.out_edges.iter()) {
        graph.check_alive(u)?;
        if !(w > W::zero()) || !w.is_finite() {
            return Err(Error::Validation(format!(
                "edge weight to/from node {u} must be positive, got {w}"
            )));
        }
    }
    let min_sets = all_min_full_seed_sets(graph, max_nodes)?;
    let neighbors: Vec<NodeId> = v_spec.neighbors().into_iter().collect();

    for size in (1..=neighbors.len()).rev() {
        for combo in neighbors.iter().combinations(size) {
            let q: BTreeSet<NodeId> = combo.into_iter().copied().collect();
            let Some(witness) = min_sets.iter().find(|s| q.iter().all(|&u| s.contains(u)))
            else {
                continue;
            };
            let z: BTreeSet<NodeId> = q
                .iter()
                .flat_map(|&qn| {
                    graph
                        .out_neighbors(qn)
                        .chain(graph.in_neighbors(qn))
                        .map(|(v, _)| v)
                        .collect::<Vec<_>>()
                })
                .filter(|v| !q.contains(v))
                .collect();
            let mut qz_edges: Vec<(NodeId, NodeId)> = Vec::new();
            for &qn in &q {
                for &zn in &z {
                    if graph.has_edge(qn, zn) {
                        qz_edges.push((qn, zn));
                    }
                    if graph.has_edge(zn, qn) {
                        qz_edges.push((zn, qn));
                    }
                }
            }
            if !edges_redundant(graph, &qz_edges, max_nodes)? {
                continue;
            }
            let condition_c = q.iter().all(|&qn| {
                let from_z = graph
                    .in_neighbors(qn)
                    .filter(|(z_node, _)| z.contains(z_node))
                    .fold(W::zero(), |acc, (_, w)| acc + w);
                let b = graph.barricade(qn);
                from_z < b && b <= v_spec.weight_to(qn) + from_z
            });
            if condition_c {
                return Ok(Some(QSetInstance {
                    q,
                    z,
                    witness_seed_set: witness.clone(),
                }));
            }
        }
    }
    Ok(None)
}
