//! Packs the 21 squares of the order-21 simple perfect squared square into
//! its 112×112 master square, then draws the tiling at 1/4 scale.
//!
//! Pass a path to pack another instance file instead:
//!
//!     cargo run --release --example perfect_square -- my_instance.txt

use adaptive_search::engine::{solve_sequential, Status};
use adaptive_search::problems::{greedy_place, PerfectSquareProblem, ProblemKind};
use adaptive_search::ProblemModel;

fn main() {
    let model = match std::env::args().nth(1) {
        Some(path) => PerfectSquareProblem::load(path).expect("instance file"),
        None => PerfectSquareProblem::instance(1).unwrap(),
    };
    let params = ProblemKind::PerfectSquare.tuned_params(model.size());
    let outcome = solve_sequential(&model, &params, &mut params.rng(), None).unwrap();
    println!("{model}: {:?} after {} iterations", outcome.status, outcome.iterations_total);
    println!("drop order {:?}", outcome.config.values());

    let placement = greedy_place(outcome.config.values(), model.master_size());
    if outcome.status != Status::Solved {
        println!("unplaced {:?}", placement.unplaced);
    }
    let scale = 4;
    let cells = (model.master_size() / scale) as usize;
    let mut grid = vec![vec!['.'; cells]; cells];
    for (k, sq) in placement.placed.iter().enumerate() {
        let mark = char::from(b'A' + k as u8);
        for y in sq.y / scale..(sq.y + sq.size) / scale {
            for x in sq.x / scale..(sq.x + sq.size) / scale {
                grid[y as usize][x as usize] = mark;
            }
        }
    }
    // y grows upward
    for row in grid.iter().rev() {
        println!("{}", row.iter().collect::<String>());
    }
}
