//! Finds an all-interval series of length n (default 14).
//!
//!     cargo run --release --example all_interval -- 16

use adaptive_search::engine::{solve_sequential, Status};
use adaptive_search::problems::{AllIntervalProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let n: usize = std::env::args().nth(1).map_or(14, |a| a.parse().expect("n"));
    let model = AllIntervalProblem::new(n).expect("n >= 2");
    let mut params = ProblemKind::AllInterval.tuned_params(n);
    params.rng_seed = 1;

    let outcome = solve_sequential(&model, &params, &mut params.rng(), None).unwrap();
    let notes = outcome.config.values();
    let intervals: Vec<u32> = notes.windows(2).map(|w| w[0].abs_diff(w[1])).collect();
    println!("{:?} after {} iterations", outcome.status, outcome.iterations_total);
    println!("notes     {notes:?}");
    println!("intervals {intervals:?}");
    if outcome.status == Status::Solved {
        assert!(model.validate(notes));
    }
}
