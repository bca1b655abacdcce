//! Compares independent random starts with all workers sharing one initial
//! configuration, over a few seeds.

use std::sync::Arc;

use adaptive_search::parallel::{solve_parallel, ParallelConfig, StartMode};
use adaptive_search::problems::{PartitionProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let model = Arc::new(PartitionProblem::new(160).unwrap());
    let params = ProblemKind::Partition.tuned_params(model.size());

    for mode in [StartMode::IndependentRandom, StartMode::SharedInitial] {
        let mut total_ms = 0.0;
        for seed in 0..10 {
            let pconfig = ParallelConfig { start_mode: mode, ..ParallelConfig::new(4, seed) };
            let outcome = solve_parallel(model.clone(), &params, &pconfig).unwrap();
            total_ms += outcome.elapsed.as_secs_f64() * 1e3;
        }
        println!("{mode:?}: mean {:.1} ms over 10 runs", total_ms / 10.0);
    }
}
