//! Fills an n×n board with 1..=n² so every row, column and diagonal has the
//! same sum.
//!
//!     cargo run --release --example magic_square -- 12

use adaptive_search::engine::solve_sequential;
use adaptive_search::problems::{MagicSquareProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let side: usize = std::env::args().nth(1).map_or(8, |a| a.parse().expect("side"));
    let model = MagicSquareProblem::new(side).expect("side >= 1");
    let params = ProblemKind::MagicSquare.tuned_params(model.size());

    let outcome = solve_sequential(&model, &params, &mut params.rng(), None).unwrap();
    println!(
        "{:?}, cost {}, {} iterations, constant {}",
        outcome.status,
        outcome.cost,
        outcome.iterations_total,
        model.magic_constant()
    );
    let width = (side * side).to_string().len();
    for row in outcome.config.values().chunks(side) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        println!("{}", cells.join(" "));
    }
}
