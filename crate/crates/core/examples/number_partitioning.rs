//! Splits 1..=n into two halves with equal sums and equal sums of squares.
//!
//!     cargo run --release --example number_partitioning -- 128

use adaptive_search::engine::solve_sequential;
use adaptive_search::problems::{PartitionProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let n: usize = std::env::args().nth(1).map_or(64, |a| a.parse().expect("n"));
    let model = PartitionProblem::new(n).expect("n must be a multiple of 8");
    let params = ProblemKind::Partition.tuned_params(n);

    let outcome = solve_sequential(&model, &params, &mut params.rng(), None).unwrap();
    let (a, b) = outcome.config.values().split_at(n / 2);
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let sums = |g: &[u32]| {
        let s: u64 = g.iter().map(|&v| v as u64).sum();
        let q: u64 = g.iter().map(|&v| (v as u64).pow(2)).sum();
        (s, q)
    };
    println!("{:?} in {} iterations", outcome.status, outcome.iterations_total);
    println!("A {a:?}\n  sum, sum of squares = {:?}", sums(&a));
    println!("B {b:?}\n  sum, sum of squares = {:?}", sums(&b));
    println!(
        "targets {} and {}; valid: {}",
        model.target_sum(),
        model.target_sq_sum(),
        model.validate(outcome.config.values())
    );
}
