//! Synthetic graph generation: random geometric, Erdős–Rényi, and power-law
//! (expected-degree) topologies plus uniform assignment of edge weights and
//! barricade factors.
//!
//! Everything is a pure function of the spec's `rng_seed`. Independent
//! ChaCha streams are derived for positions, weights, and barricades, so
//! e.g. regenerating at a different density with the same seed keeps node
//! positions and barricades fixed.

use num_traits::NumCast;
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenModel {
    Rg,
    Er,
    PowerLaw,
}

/// Declarative description of one synthetic graph.
///
/// `density_target` is model-dependent: expected directed edge count for
/// `rg`, edge probability for `er`, degree exponent for `power_law`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec<W> {
    pub model: GenModel,
    pub n: usize,
    pub density_target: f64,
    pub weight_range: [W; 2],
    pub barricade_range: [W; 2],
    pub rng_seed: u64,
}

/// Splitmix64 finalizer: derives independent sub-seeds from a base seed so
/// streams (and harness replications) stay decoupled.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// CDF of the distance between two independent uniform points in the unit
/// square. Closed form; the quartic boundary terms are what the naive
/// `pi t^2` disk approximation misses.
fn unit_square_pair_cdf(t: f64) -> f64 {
    use std::f64::consts::PI;
    if t <= 0.0 {
        return 0.0;
    }
    if t * t >= 2.0 {
        return 1.0;
    }
    if t <= 1.0 {
        PI * t * t - 8.0 * t.powi(3) / 3.0 + t.powi(4) / 2.0
    } else {
        let s = (t * t - 1.0).sqrt();
        let base = 2.0 * s - s * s;
        let arc = 2.0 * t * t * ((1.0 / t).asin() - (s / t).asin()) - 4.0 * (1.0 - s.powi(3)) / 3.0;
        let poly = 2.0
            * (t * t * (1.0 - s) - (1.0 - s.powi(3)) / 3.0 - t * t * (1.0 - s * s) / 2.0
                + (1.0 - s.powi(4)) / 4.0);
        base + arc - poly
    }
}

/// Finds the connection radius giving an expected directed edge count of
/// `target` for `n` uniform points in the unit square, by bisecting the
/// exact pair-distance CDF to a relative tolerance of 1e-6.
pub fn calibrate_theta(n: usize, target: f64) -> Result<f64> {
    let max_edges = (n * n.saturating_sub(1)) as f64;
    if !(0.0..=max_edges).contains(&target) {
        return Err(Error::Validation(format!(
            "density target {target} outside [0, {max_edges}] for n = {n}"
        )));
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    if target == max_edges {
        return Ok(std::f64::consts::SQRT_2);
    }
    let p_star = target / max_edges;
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::SQRT_2);
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if unit_square_pair_cdf(mid) < p_star {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_model(spec_model: GenModel, wanted: GenModel) -> Result<()> {
    if spec_model != wanted {
        return Err(Error::Validation(format!(
            "spec model {spec_model:?} does not match generator {wanted:?}"
        )));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Validation("generator spec requires n >= 1".into()));
    }
    Ok(())
}

/// Random geometric graph: `n` uniform points in the unit square,
/// bidirectional edges between pairs within the calibrated radius.
pub fn gen_rg<W: Weight>(spec: &GenSpec<W>) -> Result<Graph<W>> {
    check_model(spec.model, GenModel::Rg)?;
    check_n(spec.n)?;
    let theta = calibrate_theta(spec.n, spec.density_target)?;
    let theta_sq = theta * theta;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.rng_seed, 0));
    let points: Vec<(f64, f64)> = (0..spec.n)
        .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    let mut g = Graph::new(spec.n);
    for i in 0..spec.n {
        for j in (i + 1)..spec.n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            if dx * dx + dy * dy <= theta_sq {
                g.add_edge(i, j, W::one())?;
                g.add_edge(j, i, W::one())?;
            }
        }
    }
    assign_params(
        &g,
        spec.weight_range,
        spec.barricade_range,
        derive_seed(spec.rng_seed, 1),
    )
}

/// Erdős–Rényi digraph: every ordered pair gets an edge independently with
/// probability `density_target`.
pub fn gen_er<W: Weight>(spec: &GenSpec<W>) -> Result<Graph<W>> {
    check_model(spec.model, GenModel::Er)?;
    check_n(spec.n)?;
    let p = spec.density_target;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Validation(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.rng_seed, 0));
    let mut g = Graph::new(spec.n);
    for u in 0..spec.n {
        for v in 0..spec.n {
            if u != v && rng.gen::<f64>() < p {
                g.add_edge(u, v, W::one())?;
            }
        }
    }
    assign_params(
        &g,
        spec.weight_range,
        spec.barricade_range,
        derive_seed(spec.rng_seed, 1),
    )
}

/// Expected-degree (Chung–Lu) power-law graph with exponent
/// `density_target` > 1: node `i` carries weight `(n/(i+1))^(1/(gamma-1))`,
/// pair `{i, j}` connects with probability `min(1, w_i w_j / sum w)`, and
/// edges are made bidirectional.
pub fn gen_power_law<W: Weight>(spec: &GenSpec<W>) -> Result<Graph<W>> {
    check_model(spec.model, GenModel::PowerLaw)?;
    check_n(spec.n)?;
    let gamma = spec.density_target;
    if gamma <= 1.0 {
        return Err(Error::Validation(format!(
            "power-law exponent must exceed 1, got {gamma}"
        )));
    }
    let n = spec.n;
    let exponent = 1.0 / (gamma - 1.0);
    let weights: Vec<f64> = (0..n)
        .map(|i| (n as f64 / (i + 1) as f64).powf(exponent))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.rng_seed, 0));
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let p = (weights[i] * weights[j] / total).min(1.0);
            if rng.gen::<f64>() < p {
                g.add_edge(i, j, W::one())?;
                g.add_edge(j, i, W::one())?;
            }
        }
    }
    assign_params(
        &g,
        spec.weight_range,
        spec.barricade_range,
        derive_seed(spec.rng_seed, 1),
    )
}

/// Dispatches on `spec.model`.
pub fn generate<W: Weight>(spec: &GenSpec<W>) -> Result<Graph<W>> {
    match spec.model {
        GenModel::Rg => gen_rg(spec),
        GenModel::Er => gen_er(spec),
        GenModel::PowerLaw => gen_power_law(spec),
    }
}

/// Redraws every edge weight i.i.d. uniform from `weight_range` (each
/// direction of a bidirectional pair independently) and every barricade
/// i.i.d. uniform from `barricade_range`.
///
/// Weights and barricades come from separate derived streams, so the
/// barricade draw for node `u` does not depend on how many edges exist.
pub fn assign_params<W: Weight>(
    graph: &Graph<W>,
    weight_range: [W; 2],
    barricade_range: [W; 2],
    rng_seed: u64,
) -> Result<Graph<W>> {
    let [w_lo, w_hi] = weight_range;
    let [b_lo, b_hi] = barricade_range;
    if !(w_lo <= w_hi) {
        return Err(Error::Validation(format!(
            "degenerate weight range [{w_lo}, {w_hi}]"
        )));
    }
    if !(w_lo > W::zero()) {
        return Err(Error::Validation(format!(
            "weight range must be strictly positive, got lower bound {w_lo}"
        )));
    }
    if !(b_lo <= b_hi) {
        return Err(Error::Validation(format!(
            "degenerate barricade range [{b_lo}, {b_hi}]"
        )));
    }
    if !(b_lo >= W::zero()) {
        return Err(Error::Validation(format!(
            "barricade range must be non-negative, got lower bound {b_lo}"
        )));
    }
    let mut g = graph.clone();
    let mut weight_rng = ChaCha8Rng::seed_from_u64(derive_seed(rng_seed, 0));
    let weight_dist = Uniform::new_inclusive(w_lo, w_hi);
    g.reweight_edges(&mut |_, _| weight_dist.sample(&mut weight_rng));
    let mut barricade_rng = ChaCha8Rng::seed_from_u64(derive_seed(rng_seed, 1));
    let barricade_dist = Uniform::new_inclusive(b_lo, b_hi);
    for u in 0..g.capacity() {
        if g.is_alive(u) {
            let b = barricade_dist.sample(&mut barricade_rng);
            g.set_barricade(u, b)?;
        }
    }
    Ok(g)
}

/// Test-fixture generator: turns an undirected graph into an instance whose
/// size-k full-influenceability seed sets are exactly its size-k vertex
/// covers (bidirectional unit edges, barricade = in-degree).
pub fn vertex_cover_instance<W: Weight>(
    n: usize,
    undirected_edges: &[(NodeId, NodeId)],
) -> Result<Graph<W>> {
    let mut g = Graph::new(n);
    for &(u, v) in undirected_edges {
        g.add_edge(u, v, W::one())?;
        g.add_edge(v, u, W::one())?;
    }
    for u in 0..n {
        let degree = g.in_neighbors(u).count();
        let b: W = NumCast::from(degree).expect("degree fits in the weight type");
        g.set_barricade(u, b)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::sigma;
    use crate::graph::SeedSet;

    fn rg_spec(n: usize, density: f64, seed: u64) -> GenSpec<f64> {
        GenSpec {
            model: GenModel::Rg,
            n,
            density_target: density,
            weight_range: [1.0, 1.0],
            barricade_range: [1.0, 2.0],
            rng_seed: seed,
        }
    }

    #[test]
    fn cdf_is_continuous_and_normalized() {
        let below = unit_square_pair_cdf(1.0);
        let above = unit_square_pair_cdf(1.0 + 1e-12);
        assert!((below - above).abs() < 1e-9);
        assert!((unit_square_pair_cdf(std::f64::consts::SQRT_2) - 1.0).abs() < 1e-12);
        assert!(unit_square_pair_cdf(0.3) > 0.0);
        let mut prev = 0.0;
        for i in 1..=100 {
            let t = std::f64::consts::SQRT_2 * i as f64 / 100.0;
            let f = unit_square_pair_cdf(t);
            assert!(f >= prev, "CDF must be non-decreasing at t = {t}");
            prev = f;
        }
    }

    #[test]
    fn calibrate_theta_endpoints() {
        assert_eq!(calibrate_theta(30, 0.0).unwrap(), 0.0);
        let full = calibrate_theta(2, 2.0).unwrap();
        assert_eq!(full, std::f64::consts::SQRT_2);
        assert!(calibrate_theta(30, -1.0).is_err());
        assert!(calibrate_theta(30, 1000.0).is_err());
    }

    #[test]
    fn calibrate_theta_is_monotone() {
        let mut prev = 0.0;
        for target in [50.0, 150.0, 320.0, 500.0, 720.0] {
            let theta = calibrate_theta(30, target).unwrap();
            assert!(theta > prev, "theta({target}) = {theta} <= {prev}");
            prev = theta;
        }
    }

    #[test]
    fn rg_with_maximal_target_connects_every_pair() {
        let g = gen_rg(&rg_spec(2, 2.0, 9)).unwrap();
        assert_eq!(g.edge_count(), 2);
        let g = gen_rg(&rg_spec(5, 20.0, 9)).unwrap();
        assert_eq!(g.edge_count(), 20);
    }

    #[test]
    fn rg_with_zero_target_is_edgeless() {
        let g = gen_rg(&rg_spec(10, 0.0, 3)).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rg_edges_are_bidirectional() {
        let g = gen_rg(&rg_spec(30, 200.0, 11)).unwrap();
        for (u, v, _) in g.edges() {
            assert!(g.has_edge(v, u), "missing mirror of {u} -> {v}");
        }
    }

    #[test]
    fn er_extremes() {
        let mut spec = rg_spec(6, 0.0, 4);
        spec.model = GenModel::Er;
        assert_eq!(gen_er(&spec).unwrap().edge_count(), 0);
        spec.density_target = 1.0;
        assert_eq!(gen_er(&spec).unwrap().edge_count(), 30);
        spec.density_target = 1.5;
        assert!(gen_er(&spec).is_err());
    }

    #[test]
    fn power_law_degenerate_cases() {
        let mut spec = rg_spec(1, 2.5, 5);
        spec.model = GenModel::PowerLaw;
        assert_eq!(gen_power_law(&spec).unwrap().edge_count(), 0);
        spec.density_target = 1.0;
        assert!(gen_power_law(&spec).is_err());
    }

    #[test]
    fn model_mismatch_is_rejected() {
        let spec = rg_spec(5, 4.0, 1);
        assert!(gen_er(&spec).is_err());
        assert!(gen_power_law(&spec).is_err());
    }

    #[test]
    fn assign_params_fixed_weight_range() {
        let g = gen_rg(&rg_spec(20, 100.0, 2)).unwrap();
        let g = assign_params(&g, [1.0, 1.0], [5.0, 10.0], 77).unwrap();
        assert!(g.edges().iter().all(|&(_, _, w)| w == 1.0));
        for u in g.nodes() {
            let b = g.barricade(u);
            assert!((5.0..=10.0).contains(&b), "barricade {b} out of range");
        }
    }

    #[test]
    fn assign_params_zero_barricades_auto_activate() {
        let g = gen_rg(&rg_spec(12, 40.0, 6)).unwrap();
        let g = assign_params(&g, [1.0, 2.0], [0.0, 0.0], 8).unwrap();
        assert_eq!(sigma(&g, &SeedSet::new()).unwrap(), 12);
    }

    #[test]
    fn assign_params_rejects_bad_ranges() {
        let g = gen_rg(&rg_spec(4, 6.0, 1)).unwrap();
        assert!(assign_params(&g, [2.0, 1.0], [0.0, 1.0], 0).is_err());
        assert!(assign_params(&g, [0.0, 1.0], [0.0, 1.0], 0).is_err());
        assert!(assign_params(&g, [1.0, 2.0], [1.0, 0.5], 0).is_err());
        assert!(assign_params(&g, [1.0, 2.0], [-1.0, 1.0], 0).is_err());
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        for model in [GenModel::Rg, GenModel::Er, GenModel::PowerLaw] {
            let density = match model {
                GenModel::Rg => 120.0,
                GenModel::Er => 0.2,
                GenModel::PowerLaw => 2.5,
            };
            let spec = GenSpec {
                model,
                n: 25,
                density_target: density,
                weight_range: [1.0, 2.0],
                barricade_range: [0.5, 3.0],
                rng_seed: 123,
            };
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a.edges(), b.edges());
            let bars_a: Vec<f64> = a.nodes().map(|u| a.barricade(u)).collect();
            let bars_b: Vec<f64> = b.nodes().map(|u| b.barricade(u)).collect();
            assert_eq!(bars_a, bars_b);

            let mut other = spec.clone();
            other.rng_seed = 124;
            let c = generate(&other).unwrap();
            assert_ne!(a.edges(), c.edges(), "different seeds gave equal {model:?} graphs");
        }
    }

    #[test]
    fn barricades_stable_across_density_changes() {
        let a = gen_rg(&rg_spec(30, 200.0, 55)).unwrap();
        let b = gen_rg(&rg_spec(30, 500.0, 55)).unwrap();
        let bars_a: Vec<f64> = a.nodes().map(|u| a.barricade(u)).collect();
        let bars_b: Vec<f64> = b.nodes().map(|u| b.barricade(u)).collect();
        assert_eq!(bars_a, bars_b);
        assert!(b.edge_count() > a.edge_count());
    }

    #[test]
    fn vertex_cover_gadget_matches_cover_semantics() {
        // Triangle: any two nodes cover all edges, one node cannot.
        let g: Graph<f64> = vertex_cover_instance(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.barricade(0), 2.0);
        assert_eq!(sigma(&g, &[0, 1].into()).unwrap(), 3);
        assert_eq!(sigma(&g, &[0].into()).unwrap(), 1);
    }
}
