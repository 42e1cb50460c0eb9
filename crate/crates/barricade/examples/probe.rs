use barricade::generators::{GenSpec, GenModel};
use barricade::harness::*;
use barricade::solvers::Algorithm;

fn main() {
    let config = ExperimentConfig {
        graph_source: GraphSource::Generate(GenSpec {
            model: GenModel::Er, n: 8, density_target: 0.4,
            weight_range: [1.0, 2.0], barricade_range: [1.0, 1.0], rng_seed: 0,
        }),
        sweep: Sweep::Barricade(vec![[0.0, 0.0], [100.0, 100.0]]),
        algorithms: vec![Algorithm::Mss, Algorithm::Greedy],
        replications: 2,
        rng_seed: 3,
        param_ranges: None,
        zero_timing: true,
        opt_guard: OptGuard::default(),
    };
    let result = run_barricade_sweep(&config).unwrap();
    for row in &result.rows {
        println!("{} {} rep{} seeds={} sigma={} set={:?}", row.sweep_value, row.algorithm, row.replication, row.seed_count, row.sigma, row.seeds);
    }
}
