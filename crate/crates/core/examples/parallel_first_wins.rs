//! Runs several independent searches at once; the first to solve stops the
//! others.
//!
//!     cargo run --release --example parallel_first_wins -- 4

use std::sync::Arc;

use adaptive_search::parallel::{solve_parallel, ParallelConfig};
use adaptive_search::problems::{MagicSquareProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let workers: usize = std::env::args().nth(1).map_or(4, |a| a.parse().expect("workers"));
    let model = Arc::new(MagicSquareProblem::new(12).unwrap());
    let params = ProblemKind::MagicSquare.tuned_params(model.size());

    let outcome = solve_parallel(model, &params, &ParallelConfig::new(workers, 2024)).unwrap();
    println!(
        "{:?} by worker {:?} in {:.1} ms",
        outcome.status,
        outcome.winner,
        outcome.elapsed.as_secs_f64() * 1e3
    );
    for w in &outcome.per_worker {
        println!(
            "worker {}: {:?}, best cost {}, {} iterations, stopped at {:.1} ms",
            w.worker,
            w.status,
            w.cost,
            w.iterations_total,
            w.finished_after.as_secs_f64() * 1e3
        );
    }
}
