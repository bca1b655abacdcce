//! Adaptive Search: constraint-based local search over permutations.
//!
//! - [`model`]: the problem interface (cost, error projection, swap moves).
//! - [`engine`]: the sequential search with tabu memory, partial resets and
//!   restarts.
//! - [`problems`]: all-interval series, number partitioning, magic squares
//!   and perfect-square placement, each with an independent validator.
//! - [`parallel`]: independent multi-start workers, first solution wins.
//! - [`bench`]: repeated timed runs, trimmed statistics and reports.
//!
//! ```
//! use adaptive_search::engine::{solve_sequential, SolverParams, Status};
//! use adaptive_search::problems::MagicSquareProblem;
//! use adaptive_search::rng::worker_rng;
//!
//! let model = MagicSquareProblem::new(4).unwrap();
//! let params = SolverParams::for_size(16);
//! let outcome = solve_sequential(&model, &params, &mut worker_rng(7, 0), None).unwrap();
//! if outcome.status == Status::Solved {
//!     assert_eq!(outcome.cost, 0);
//! }
//! ```

pub mod bench;
pub mod engine;
pub mod model;
pub mod parallel;
pub mod problems;
pub mod rng;

pub use engine::{Configuration, Outcome, SolverParams, Status};
pub use model::{Cost, ProblemModel};
pub use parallel::{solve_parallel, ParallelConfig, ParallelOutcome, StartMode};
