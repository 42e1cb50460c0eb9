//! Deterministic discrete-time diffusion under the barricade activation rule.
//!
//! Rounds are synchronous: at each step, every inactive node whose summed
//! weight from active in-neighbors reaches its barricade activates
//! simultaneously. The process is progressive (nodes never deactivate) and
//! reaches its fixed point within `node_count` rounds.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, NodeId, SeedSet};
use crate::Weight;

/// Time-indexed activation sets of one diffusion run.
///
/// `steps[t]` is the sorted set of nodes active at step `t`; `steps[0]` is
/// the seed set and the last entry is the fixed point. Serializes to the
/// `{ "steps": [...], "sigma": n }` wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeTrace {
    pub steps: Vec<Vec<NodeId>>,
    pub sigma: usize,
}

impl CascadeTrace {
    /// The fixed-point active set.
    pub fn final_active(&self) -> &[NodeId] {
        self.steps.last().map_or(&[], Vec::as_slice)
    }
}

struct CascadeState<W> {
    active: Vec<bool>,
    received: Vec<W>,
    active_count: usize,
}

impl<W: Weight> CascadeState<W> {
    fn new(graph: &Graph<W>, seeds: &SeedSet) -> Self {
        let cap = graph.capacity();
        let mut state = Self {
            active: vec![false; cap],
            received: vec![W::zero(); cap],
            active_count: 0,
        };
        for u in seeds.iter() {
            state.activate(graph, u);
        }
        state
    }

    fn activate(&mut self, graph: &Graph<W>, u: NodeId) {
        self.active[u] = true;
        self.active_count += 1;
        for (v, w) in graph.out_neighbors(u) {
            self.received[v] = self.received[v] + w;
        }
    }

    fn eligible(&self, graph: &Graph<W>, u: NodeId) -> bool {
        !self.active[u] && self.received[u] >= graph.barricade(u)
    }
}

fn cascade_impl<W: Weight>(
    graph: &Graph<W>,
    seeds: &SeedSet,
    record_steps: bool,
) -> Result<(Vec<Vec<NodeId>>, usize)> {
    seeds.validate(graph)?;
    let mut state = CascadeState::new(graph, seeds);
    let mut steps: Vec<Vec<NodeId>> = Vec::new();
    if record_steps {
        steps.push(seeds.to_vec());
    }

    // Round 1 scans every inactive node: it must pick up zero-barricade
    // nodes, which activate unconditionally (empty sum >= 0).
    let mut frontier: Vec<NodeId> = graph
        .nodes()
        .filter(|&u| state.eligible(graph, u))
        .collect();

    while !frontier.is_empty() {
        for &u in &frontier {
            state.activate(graph, u);
        }
        if record_steps {
            let mut cumulative = steps.last().cloned().unwrap_or_default();
            cumulative.extend_from_slice(&frontier);
            cumulative.sort_unstable();
            steps.push(cumulative);
        }
        // Later rounds only need to look at nodes whose received weight just
        // changed: the out-neighbors of the round's newly active nodes.
        let mut next: Vec<NodeId> = frontier
            .iter()
            .flat_map(|&u| graph.out_neighbors(u).map(|(v, _)| v))
            .filter(|&v| state.eligible(graph, v))
            .collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }

    Ok((steps, state.active_count))
}

/// Runs the diffusion to its fixed point, returning the full trace.
pub fn run_cascade<W: Weight>(graph: &Graph<W>, seeds: &SeedSet) -> Result<CascadeTrace> {
    let (steps, sigma) = cascade_impl(graph, seeds, true)?;
    Ok(CascadeTrace { steps, sigma })
}

/// Number of nodes active at the fixed point of the diffusion from `seeds`.
pub fn sigma<W: Weight>(graph: &Graph<W>, seeds: &SeedSet) -> Result<usize> {
    let (_, sigma) = cascade_impl(graph, seeds, false)?;
    Ok(sigma)
}

/// True iff the diffusion from `seeds` activates every (alive) node.
pub fn is_fully_influenced<W: Weight>(graph: &Graph<W>, seeds: &SeedSet) -> Result<bool> {
    Ok(sigma(graph, seeds)? == graph.node_count())
}
