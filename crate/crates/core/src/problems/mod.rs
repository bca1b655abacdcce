//! Benchmark problem models.

mod all_interval;
mod magic_square;
mod partition;
mod perfect_square;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::SolverParams;
use crate::model::ProblemModel;

pub use all_interval::{all_interval_cost, AllIntervalProblem};
pub use magic_square::MagicSquareProblem;
pub use partition::PartitionProblem;
pub use perfect_square::{
    greedy_place, OpenSlot, PerfectSquareProblem, PerfectSquareWeights, PlacedSquare,
    PlacementResult, INSTANCE_TABLE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("perfect-square instance {0} is not bundled; load it from a file")]
    InstanceUnavailable(usize),
    #[error("cannot read instance: {0}")]
    Io(String),
}

/// Independent solution check for `values` under `model`.
pub fn validate(model: &dyn ProblemModel, values: &[u32]) -> bool {
    values.len() == model.size() && model.validate(values)
}

/// The benchmark families by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    AllInterval,
    Partition,
    MagicSquare,
    PerfectSquare,
}

impl ProblemKind {
    /// Builds the model. `size` is the series length, number count or board
    /// side, and the instance id for perfect squares.
    pub fn build(self, size: usize) -> Result<Box<dyn ProblemModel>, ProblemError> {
        Ok(match self {
            ProblemKind::AllInterval => Box::new(AllIntervalProblem::new(size)?),
            ProblemKind::Partition => Box::new(PartitionProblem::new(size)?),
            ProblemKind::MagicSquare => Box::new(MagicSquareProblem::new(size)?),
            ProblemKind::PerfectSquare => Box::new(PerfectSquareProblem::instance(size)?),
        })
    }

    /// Parameters that work well for this family on a model with `n`
    /// variables. [`SolverParams::for_size`] gives the generic defaults.
    pub fn tuned_params(self, n: usize) -> SolverParams {
        let mut p = SolverParams::for_size(n);
        p.max_restarts = 100;
        match self {
            ProblemKind::AllInterval => {
                p.tabu_tenure = 1;
                p.reset_limit = 1;
                p.reset_percentage = 0.25;
                p.plateau_probability = 0.66;
                p.max_iterations = 1_000_000 * n as u64;
            }
            ProblemKind::Partition => {
                p.tabu_tenure = 20;
                p.reset_limit = 4;
                // at least 4 positions: a one-position reset changes nothing
                p.reset_percentage = (4.0 / n.max(1) as f64).clamp(0.05, 1.0);
                p.max_iterations = 100_000 * n as u64;
            }
            ProblemKind::MagicSquare => {
                // n is the cell count; the heuristics scale with the side
                let side = (n as f64).sqrt().round().max(1.0) as u64;
                p.tabu_tenure = 3 * side;
                p.reset_limit = side as usize;
                // re-shuffle about 4 cells on boards up to 20x20
                p.reset_percentage = (4.0 / n.max(1) as f64).clamp(0.01, 1.0);
                p.max_iterations = 100_000 * n as u64;
            }
            ProblemKind::PerfectSquare => {
                p.tabu_tenure = 5;
                p.reset_limit = 3;
                p.reset_percentage = 0.1;
                p.plateau_probability = 0.7;
                p.max_iterations = 1_000_000 * n as u64;
            }
        }
        p
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::AllInterval => "all-interval",
            ProblemKind::Partition => "partition",
            ProblemKind::MagicSquare => "magic-square",
            ProblemKind::PerfectSquare => "perfect-square",
        })
    }
}

impl FromStr for ProblemKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-interval" | "ai" => Ok(ProblemKind::AllInterval),
            "partition" | "partit" => Ok(ProblemKind::Partition),
            "magic-square" | "magic" => Ok(ProblemKind::MagicSquare),
            "perfect-square" | "squares" => Ok(ProblemKind::PerfectSquare),
            _ => Err(ProblemError::InvalidInstance(format!("unknown problem {s:?}"))),
        }
    }
}
