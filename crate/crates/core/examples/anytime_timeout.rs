//! Stops a search that cannot finish in time and keeps the best
//! configuration it reached.

use std::time::Duration;

use adaptive_search::engine::solve_sequential;
use adaptive_search::problems::{all_interval_cost, AllIntervalProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let n = 200;
    let model = AllIntervalProblem::new(n).unwrap();
    let params = ProblemKind::AllInterval.tuned_params(n);

    let outcome =
        solve_sequential(&model, &params, &mut params.rng(), Some(Duration::from_millis(500)))
            .unwrap();
    println!(
        "{:?} after {} iterations: {} of {} intervals still missing",
        outcome.status,
        outcome.iterations_total,
        outcome.cost,
        n - 1
    );
    assert_eq!(outcome.cost, all_interval_cost(outcome.config.values()));
    assert_eq!(outcome.cost, model.cost(outcome.config.values()));
}
