//! Real-dataset pipeline: SNAP-style edge-list ingestion with dense id
//! remapping, and node-induced subgraph sampling.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::Weight;

/// How to interpret each `u v` record of a SNAP file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Directedness {
    /// Records are directed edges, taken as-is.
    Directed,
    /// Records are undirected: each yields both directions.
    Bidirected,
}

/// An ingested graph together with the original dataset ids, indexed by the
/// dense ids used internally.
#[derive(Debug, Clone)]
pub struct SnapIngest<W> {
    pub graph: Graph<W>,
    pub original_ids: Vec<u64>,
}

/// Parses a SNAP plain edge list (`u v` per line, `#` comments ignored).
/// Sparse dataset ids are remapped to dense ids in first-appearance order.
/// Duplicate records and self-loops are skipped silently — public datasets
/// routinely contain both orientations of an undirected edge. All weights
/// are 1 and barricades 0; use `assign_params` to simulate parameters.
pub fn ingest_snap<W: Weight>(
    reader: impl BufRead,
    directedness: Directedness,
) -> Result<SnapIngest<W>> {
    let mut remap: HashMap<u64, NodeId> = HashMap::new();
    let mut original_ids: Vec<u64> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut intern = |raw: u64, remap: &mut HashMap<u64, NodeId>| -> NodeId {
        *remap.entry(raw).or_insert_with(|| {
            original_ids.push(raw);
            original_ids.len() - 1
        })
    };
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `u v`, got {} fields", tokens.len()),
            });
        }
        let parse = |t: &str| -> Result<u64> {
            t.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid node id `{t}`"),
            })
        };
        let u_raw = parse(tokens[0])?;
        let v_raw = parse(tokens[1])?;
        if u_raw == v_raw {
            continue;
        }
        let u = intern(u_raw, &mut remap);
        let v = intern(v_raw, &mut remap);
        if seen.insert((u, v)) {
            edges.push((u, v));
        }
        if directedness == Directedness::Bidirected && seen.insert((v, u)) {
            edges.push((v, u));
        }
    }
    let mut graph = Graph::new(original_ids.len());
    for (u, v) in edges {
        graph.add_edge(u, v, W::one())?;
    }
    Ok(SnapIngest {
        graph,
        original_ids,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMethod {
    /// Draws the node set uniformly without replacement.
    UniformNodeInduced,
    /// Grows a breadth-first ball from a random root (direction ignored),
    /// restarting from a fresh random root if a component is exhausted.
    BfsBall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub target_nodes: usize,
    pub method: SampleMethod,
    pub rng_seed: u64,
}

/// A sampled node-induced subgraph. New ids are dense; `parent_nodes[i]` is
/// the id node `i` had in the parent graph.
#[derive(Debug, Clone)]
pub struct SubgraphSample<W> {
    pub graph: Graph<W>,
    pub parent_nodes: Vec<NodeId>,
}

/// Draws `spec.target_nodes` nodes by the chosen method and induces the
/// subgraph on them: every parent edge with both endpoints sampled is kept
/// with its weight, as are the sampled barricades.
pub fn sample_subgraph<W: Weight>(graph: &Graph<W>, spec: &SampleSpec) -> Result<SubgraphSample<W>> {
    let alive: Vec<NodeId> = graph.nodes().collect();
    if spec.target_nodes == 0 {
        return Err(Error::Validation("sample target must be at least 1".into()));
    }
    if spec.target_nodes > alive.len() {
        return Err(Error::Validation(format!(
            "sample target {} exceeds graph size {}",
            spec.target_nodes,
            alive.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut chosen: Vec<NodeId> = match spec.method {
        SampleMethod::UniformNodeInduced => alive
            .choose_multiple(&mut rng, spec.target_nodes)
            .copied()
            .collect(),
        SampleMethod::BfsBall => bfs_ball(graph, &alive, spec.target_nodes, &mut rng),
    };
    chosen.sort_unstable();

    let index_of: HashMap<NodeId, NodeId> = chosen
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let mut sub = Graph::new(chosen.len());
    for (new, &old) in chosen.iter().enumerate() {
        sub.set_barricade(new, graph.barricade(old))?;
        for (v, w) in graph.out_neighbors(old) {
            if let Some(&new_v) = index_of.get(&v) {
                sub.add_edge(new, new_v, w)?;
            }
        }
    }
    Ok(SubgraphSample {
        graph: sub,
        parent_nodes: chosen,
    })
}

fn bfs_ball<W: Weight>(
    graph: &Graph<W>,
    alive: &[NodeId],
    target: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<NodeId> {
    let mut visited: HashSet<NodeId> = HashSet::new();
    let mut picked: Vec<NodeId> = Vec::with_capacity(target);
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    while picked.len() < target {
        if queue.is_empty() {
            let remaining: Vec<NodeId> = alive
                .iter()
                .copied()
                .filter(|u| !visited.contains(u))
                .collect();
            let root = remaining[rng.gen_range(0..remaining.len())];
            visited.insert(root);
            queue.push_back(root);
        }
        let u = queue.pop_front().expect("queue refilled above");
        picked.push(u);
        if picked.len() == target {
            break;
        }
        let mut neighbors: Vec<NodeId> = graph
            .out_neighbors(u)
            .chain(graph.in_neighbors(u))
            .map(|(v, _)| v)
            .filter(|v| !visited.contains(v))
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();
        for v in neighbors {
            visited.insert(v);
            queue.push_back(v);
        }
    }
    picked
}
