//! Influence maximization under a hard-threshold diffusion model.
//!
//! A node carries a *barricade factor* `b_u`: it activates exactly when the
//! summed weight of its already-active in-neighbors reaches `b_u`. The
//! objective `sigma(S)` (number of nodes active at the diffusion fixed point)
//! is monotone but not submodular, so the usual greedy guarantees do not
//! apply. This crate provides:
//!
//! - [`graph`]: directed weighted graphs with per-node barricades and file I/O,
//! - [`cascade`]: the deterministic discrete-time diffusion engine,
//! - [`structure`]: deficiency/redundancy analysis and exhaustive validators
//!   for the seed-set perturbation bounds,
//! - [`solvers`]: the removal-based MSS and SIM heuristics plus greedy and
//!   exhaustive baselines,
//! - [`generators`]: random geometric, Erdős–Rényi, and power-law graph
//!   generators with uniform parameter assignment,
//! - [`ingest`]: SNAP edge-list ingestion and subgraph sampling,
//! - [`harness`]: a declarative experiment runner with CSV/JSON emission.
//!
//! Core algorithms are generic over the edge-weight/barricade scalar through
//! the [`Weight`] trait; `f64` (see [`Graph64`]) is the usual choice.

pub mod cascade;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod ingest;
pub mod solvers;
pub mod structure;

use std::fmt::{Debug, Display};

use num_traits::Float;
use rand::distributions::uniform::SampleUniform;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, SeedSet};

/// Scalar type for edge weights and barricade factors.
///
/// Blanket-implemented for any float that can be sampled uniformly, so the
/// whole stack works with `f32` or `f64` (the concrete aliases below).
pub trait Weight:
    Float + SampleUniform + Debug + Display + Send + Sync + 'static
{
}

impl<T> Weight for T where T: Float + SampleUniform + Debug + Display + Send + Sync + 'static {}

/// Graph over `f64` weights; the default for the CLI and harness.
pub type Graph64 = Graph<f64>;
/// Graph over `f32` weights.
pub type Graph32 = Graph<f32>;
