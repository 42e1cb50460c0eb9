//! Directed weighted graphs with per-node barricade factors.
//!
//! Node ids are dense integers. Removal is logical: a removed node keeps its
//! id but drops out of every query, so iterative removal (the MSS loop) does
//! not pay for a full copy per step. Cached per-node weight sums over the
//! alive subgraph are maintained incrementally on removal.

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, Write};

use num_traits::NumCast;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Weight;

pub type NodeId = usize;

/// A set of node ids proposed as initially-active nodes.
///
/// Backed by a `BTreeSet`, so iteration is ascending and `Ord` compares sets
/// lexicographically by their sorted elements (the tie-break order used by
/// the exhaustive solvers).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeedSet {
    members: BTreeSet<NodeId>,
}

impl SeedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: NodeId) -> bool {
        self.members.insert(u)
    }

    pub fn remove(&mut self, u: NodeId) -> bool {
        self.members.remove(&u)
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.members.contains(&u)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.members.iter().copied().collect()
    }

    /// Checks every member refers to an alive node of `graph`.
    pub fn validate<W: Weight>(&self, graph: &Graph<W>) -> Result<()> {
        for u in self.iter() {
            graph.check_alive(u)?;
        }
        Ok(())
    }
}

impl FromIterator<NodeId> for SeedSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl<const N: usize> From<[NodeId; N]> for SeedSet {
    fn from(ids: [NodeId; N]) -> Self {
        ids.into_iter().collect()
    }
}

/// Directed weighted graph with one barricade factor per node.
///
/// Invariants maintained by every constructor and mutator:
/// - every stored weight is strictly positive and finite,
/// - `out_edges` and `in_edges` mirror each other exactly,
/// - at most one edge per ordered pair, no self-loops,
/// - `barricades[u] >= 0` for all u.
#[derive(Debug, Clone)]
pub struct Graph<W> {
    out_edges: Vec<Vec<(NodeId, W)>>,
    in_edges: Vec<Vec<(NodeId, W)>>,
    barricades: Vec<W>,
    alive: Vec<bool>,
    alive_count: usize,
}

impl<W: Weight> Graph<W> {
    /// An edgeless graph of `n` nodes, all barricades zero.
    pub fn new(n: usize) -> Self {
        Self {
            out_edges: vec![Vec::new(); n],
            in_edges: vec![Vec::new(); n],
            barricades: vec![W::zero(); n],
            alive: vec![true; n],
            alive_count: n,
        }
    }

    /// Builds a graph from directed `(u, v, w)` triples.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId, W)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Builds a graph from undirected pairs, inserting both directions with
    /// the same weight.
    pub fn bidirectional(n: usize, pairs: &[(NodeId, NodeId, W)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v, w) in pairs {
            g.add_edge(u, v, w)?;
            g.add_edge(v, u, w)?;
        }
        Ok(g)
    }

    /// Number of alive nodes.
    pub fn node_count(&self) -> usize {
        self.alive_count
    }

    /// Total id slots, including removed nodes. Valid ids are `0..capacity()`.
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    pub fn is_alive(&self, u: NodeId) -> bool {
        u < self.alive.len() && self.alive[u]
    }

    fn check_id(&self, u: NodeId) -> Result<()> {
        if u >= self.alive.len() {
            return Err(Error::NodeOutOfRange {
                node: u,
                count: self.alive.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_alive(&self, u: NodeId) -> Result<()> {
        self.check_id(u)?;
        if !self.alive[u] {
            return Err(Error::NodeRemoved(u));
        }
        Ok(())
    }

    /// Ascending iteration over alive node ids.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(u, &a)| a.then_some(u))
    }

    /// Alive out-neighbors of `u` with edge weights.
    pub fn out_neighbors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, W)> + '_ {
        self.out_edges[u]
            .iter()
            .filter(|&&(v, _)| self.alive[v])
            .copied()
    }

    /// Alive in-neighbors of `u` with edge weights.
    pub fn in_neighbors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, W)> + '_ {
        self.in_edges[u]
            .iter()
            .filter(|&&(v, _)| self.alive[v])
            .copied()
    }

    pub fn barricade(&self, u: NodeId) -> W {
        self.barricades[u]
    }

    /// Total weight from alive in-neighbors of `u`.
    ///
    /// Recomputed over the adjacency list on every call: the sum is the same
    /// expression no matter which removals happened before, so threshold
    /// comparisons (notably `b_u = 0` against an empty sum) never see
    /// floating-point residue from incremental updates.
    pub fn total_in_weight(&self, u: NodeId) -> W {
        self.in_neighbors(u).fold(W::zero(), |acc, (_, w)| acc + w)
    }

    /// Total weight to alive out-neighbors of `u`.
    pub fn total_out_weight(&self, u: NodeId) -> W {
        self.out_neighbors(u).fold(W::zero(), |acc, (_, w)| acc + w)
    }

    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<W> {
        if !self.is_alive(u) || !self.is_alive(v) {
            return None;
        }
        self.out_edges[u]
            .iter()
            .find(|&&(t, _)| t == v)
            .map(|&(_, w)| w)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Number of directed edges between alive endpoints.
    pub fn edge_count(&self) -> usize {
        self.nodes().map(|u| self.out_neighbors(u).count()).sum()
    }

    /// All directed edges between alive endpoints, ascending by `(u, v)`.
    pub fn edges(&self) -> Vec<(NodeId, NodeId, W)> {
        let mut edges: Vec<(NodeId, NodeId, W)> = self
            .nodes()
            .flat_map(|u| self.out_neighbors(u).map(move |(v, w)| (u, v, w)))
            .collect();
        edges.sort_by_key(|&(u, v, _)| (u, v));
        edges
    }

    fn validate_weight(w: W) -> Result<()> {
        if !(w > W::zero()) || !w.is_finite() {
            return Err(Error::Validation(format!(
                "edge weight must be strictly positive and finite, got {w}"
            )));
        }
        Ok(())
    }

    fn validate_barricade(b: W) -> Result<()> {
        if !(b >= W::zero()) || !b.is_finite() {
            return Err(Error::Validation(format!(
                "barricade factor must be non-negative and finite, got {b}"
            )));
        }
        Ok(())
    }

    /// Inserts the directed edge `u -> v`. Self-loops, duplicate pairs, and
    /// non-positive weights are rejected.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: W) -> Result<()> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        Self::validate_weight(w)?;
        if u == v {
            return Err(Error::Validation(format!("self-loop on node {u}")));
        }
        if self.out_edges[u].iter().any(|&(t, _)| t == v) {
            return Err(Error::Validation(format!("duplicate edge {u} -> {v}")));
        }
        self.out_edges[u].push((v, w));
        self.in_edges[v].push((u, w));
        Ok(())
    }

    pub fn set_barricade(&mut self, u: NodeId, b: W) -> Result<()> {
        self.check_alive(u)?;
        Self::validate_barricade(b)?;
        self.barricades[u] = b;
        Ok(())
    }

    pub fn set_all_barricades(&mut self, b: W) -> Result<()> {
        Self::validate_barricade(b)?;
        for u in 0..self.barricades.len() {
            if self.alive[u] {
                self.barricades[u] = b;
            }
        }
        Ok(())
    }

    /// Removes `u` in place. Logical deletion: the id keeps its slot, all
    /// queries skip it from now on.
    pub(crate) fn remove_node_mut(&mut self, u: NodeId) {
        debug_assert!(self.alive[u]);
        self.alive[u] = false;
        self.alive_count -= 1;
    }

    /// Returns a copy of the graph with `u` and all incident edges removed.
    /// Remaining node ids are preserved.
    pub fn remove_node(&self, u: NodeId) -> Result<Self> {
        self.check_alive(u)?;
        let mut g = self.clone();
        g.remove_node_mut(u);
        Ok(g)
    }

    /// Sum of weights of edges `z -> u` with alive `z`, optionally restricted
    /// to sources in `restrict_to`.
    pub fn in_weight_sum(&self, u: NodeId, restrict_to: Option<&BTreeSet<NodeId>>) -> Result<W> {
        self.check_alive(u)?;
        let sum = self
            .in_neighbors(u)
            .filter(|(z, _)| restrict_to.map_or(true, |set| set.contains(z)))
            .fold(W::zero(), |acc, (_, w)| acc + w);
        Ok(sum)
    }

    /// Returns a copy with the directed edge `u -> v` (weight `w`) added.
    pub fn with_edge(&self, u: NodeId, v: NodeId, w: W) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v, w)?;
        Ok(g)
    }

    /// Returns a copy with the listed directed edges removed. Errors if any
    /// edge is absent.
    pub fn without_edges(&self, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_alive(u)?;
            g.check_alive(v)?;
            let pos = g.out_edges[u].iter().position(|&(t, _)| t == v);
            let Some(pos) = pos else {
                return Err(Error::Validation(format!("edge {u} -> {v} not present")));
            };
            g.out_edges[u].remove(pos);
            let in_pos = g.in_edges[v]
                .iter()
                .position(|&(s, _)| s == u)
                .expect("in-list mirrors out-list");
            g.in_edges[v].remove(in_pos);
        }
        Ok(g)
    }

    /// Returns a copy with one extra node appended (id = `capacity()`),
    /// wired with the given in-edges `(source, w)` and out-edges `(target, w)`.
    pub fn with_node(
        &self,
        barricade: W,
        in_edges: &[(NodeId, W)],
        out_edges: &[(NodeId, W)],
    ) -> Result<Self> {
        Self::validate_barricade(barricade)?;
        let mut g = self.clone();
        let v = g.alive.len();
        g.out_edges.push(Vec::new());
        g.in_edges.push(Vec::new());
        g.barricades.push(barricade);
        g.alive.push(true);
        g.alive_count += 1;
        for &(src, w) in in_edges {
            g.add_edge(src, v, w)?;
        }
        for &(dst, w) in out_edges {
            g.add_edge(v, dst, w)?;
        }
        Ok(g)
    }

    /// Pads the graph with isolated nodes (barricade `default_b`) until it
    /// has at least `n` id slots. Companion to the file loaders, where an
    /// isolated trailing node never appears in the edge list.
    pub fn pad_nodes(&self, n: usize, default_b: W) -> Result<Self> {
        Self::validate_barricade(default_b)?;
        let mut g = self.clone();
        while g.alive.len() < n {
            g.out_edges.push(Vec::new());
            g.in_edges.push(Vec::new());
            g.barricades.push(default_b);
            g.alive.push(true);
            g.alive_count += 1;
        }
        Ok(g)
    }

    /// Rewrites the weight of every stored edge through `f`, keeping both
    /// adjacency mirrors consistent. Applied in ascending source-id order,
    /// insertion order within a source.
    pub(crate) fn reweight_edges(&mut self, f: &mut dyn FnMut(NodeId, NodeId) -> W) {
        let n = self.out_edges.len();
        for u in 0..n {
            for i in 0..self.out_edges[u].len() {
                let (v, _) = self.out_edges[u][i];
                let w = f(u, v);
                debug_assert!(w > W::zero() && w.is_finite());
                self.out_edges[u][i].1 = w;
            }
        }
        for v in 0..n {
            self.in_edges[v].clear();
        }
        for u in 0..n {
            for i in 0..self.out_edges[u].len() {
                let (v, w) = self.out_edges[u][i];
                self.in_edges[v].push((u, w));
            }
        }
    }

    /// Writes alive edges as `u v w` lines, ascending by source id.
    pub fn write_edge_list(&self, mut out: impl Write) -> Result<()> {
        for u in self.nodes() {
            for (v, w) in self.out_neighbors(u) {
                writeln!(out, "{u} {v} {w}")?;
            }
        }
        Ok(())
    }

    /// Writes alive barricades as `u b` lines, ascending by id.
    pub fn write_barricades(&self, mut out: impl Write) -> Result<()> {
        for u in self.nodes() {
            writeln!(out, "{u} {}", self.barricades[u])?;
        }
        Ok(())
    }
}

fn parse_scalar<W: Weight>(token: &str, line: usize, what: &str) -> Result<W> {
    let value: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} `{token}`"),
    })?;
    NumCast::from(value).ok_or(Error::Parse {
        line,
        msg: format!("{what} `{token}` not representable"),
    })
}

fn parse_id(token: &str, line: usize) -> Result<NodeId> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid node id `{token}`"),
    })
}

/// Parses an edge-list stream: one `u v [w]` per line, `#` comments ignored,
/// missing weights default to 1. The node count is one past the largest id
/// seen; every barricade is set to `default_barricade`.
pub fn load_edge_list<W: Weight>(reader: impl BufRead, default_barricade: W) -> Result<Graph<W>> {
    let mut edges: Vec<(NodeId, NodeId, W)> = Vec::new();
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut max_id: Option<NodeId> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `u v [w]`, got {} fields", tokens.len()),
            });
        }
        let u = parse_id(tokens[0], line_no)?;
        let v = parse_id(tokens[1], line_no)?;
        let w = if tokens.len() == 3 {
            parse_scalar(tokens[2], line_no, "weight")?
        } else {
            W::one()
        };
        if !(w > W::zero()) || !w.is_finite() {
            return Err(Error::Validation(format!(
                "line {line_no}: non-positive weight {w} on edge {u} -> {v}"
            )));
        }
        if u == v {
            return Err(Error::Validation(format!(
                "line {line_no}: self-loop on node {u}"
            )));
        }
        if !seen.insert((u, v)) {
            return Err(Error::Validation(format!(
                "line {line_no}: duplicate edge {u} -> {v}"
            )));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }
    let n = max_id.map_or(0, |m| m + 1);
    let mut g = Graph::from_edges(n, &edges)?;
    g.set_all_barricades(default_barricade)?;
    Ok(g)
}

/// Overwrites barricades from a `u b` per-line stream; unlisted nodes keep
/// their prior values. Unknown ids and negative values are errors.
pub fn load_barricades<W: Weight>(graph: &Graph<W>, reader: impl BufRead) -> Result<Graph<W>> {
    let mut g = graph.clone();
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
                msg: format!("expected `u b`, got {} fields", tokens.len()),
            });
        }
        let u = parse_id(tokens[0], line_no)?;
        let b = parse_scalar::<W>(tokens[1], line_no, "barricade")?;
        if !(b >= W::zero()) || !b.is_finite() {
            return Err(Error::Validation(format!(
                "line {line_no}: negative barricade {b} for node {u}"
            )));
        }
        g.set_barricade(u, b).map_err(|_| Error::Validation(format!(
            "line {line_no}: unknown node id {u}"
        )))?;
    }
    Ok(g)
}

/// Loads a graph from an edge-list stream plus an optional barricade stream.
///
/// The barricade file also fixes the node count: ids listed there but absent
/// from the edge list become isolated nodes, so a graph whose last node has
/// no edges round-trips through the two files.
pub fn load_graph_files<W: Weight>(
    edges: impl BufRead,
    barricades: Option<&str>,
    default_barricade: W,
) -> Result<Graph<W>> {
    let mut g = load_edge_list(edges, default_barricade)?;
    if let Some(text) = barricades {
        let max_listed = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .filter_map(|l| l.split_whitespace().next())
            .filter_map(|t| t.parse::<NodeId>().ok())
            .max();
        if let Some(m) = max_listed {
            if m >= g.capacity() {
                g = g.pad_nodes(m + 1, default_barricade)?;
            }
        }
        g = load_barricades(&g, text.as_bytes())?;
    }
    Ok(g)
}
