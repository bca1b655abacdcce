//! Repeated timed runs over a sweep of worker counts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::stats::{speedup_table, summarize, StatsError};
use crate::engine::{SolverParams, Status};
use crate::model::{Cost, ProblemModel};
use crate::parallel::{solve_parallel, ParallelConfig, ParallelError, StartMode};
use crate::problems::{self, PerfectSquareProblem, ProblemError, ProblemKind};
use crate::rng::run_seed;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Parallel(#[from] ParallelError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("cannot write report: {0}")]
    Output(String),
}

/// Which instance to solve. For perfect squares `size` is the instance id,
/// and `instance_file` optionally supplies its square list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub size: usize,
    #[serde(default)]
    pub instance_file: Option<PathBuf>,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind, size: usize) -> Self {
        Self { kind, size, instance_file: None }
    }

    pub fn build(&self) -> Result<Arc<dyn ProblemModel>, ProblemError> {
        match (&self.instance_file, self.kind) {
            (Some(path), ProblemKind::PerfectSquare) => {
                Ok(Arc::new(PerfectSquareProblem::load_instance(path, self.size)?))
            }
            (Some(_), kind) => Err(ProblemError::InvalidInstance(format!(
                "{kind} takes no instance file"
            ))),
            (None, kind) => Ok(Arc::from(kind.build(self.size)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub problem: ProblemSpec,
    pub params: SolverParams,
    pub worker_counts: Vec<usize>,
    pub runs: usize,
    pub master_seed: u64,
    pub start_mode: StartMode,
    /// Wall-clock budget of each run.
    pub timeout: Option<Duration>,
}

impl BenchmarkSpec {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.runs < 3 {
            return Err(BenchError::InvalidSpec(format!(
                "runs must be at least 3 for trimmed statistics, got {}",
                self.runs
            )));
        }
        if self.worker_counts.is_empty() || self.worker_counts.contains(&0) {
            return Err(BenchError::InvalidSpec("worker counts must be non-empty and positive".into()));
        }
        self.params.validate().map_err(|e| BenchError::InvalidSpec(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub workers: usize,
    pub seed: u64,
    pub status: Status,
    pub elapsed_ms: f64,
    pub cost: Cost,
    pub winner: Option<usize>,
    pub iterations_total: u64,
    /// The independent validator accepted the returned configuration.
    pub validated: bool,
}

impl RunRecord {
    /// Counted as solved only after the validator has confirmed it.
    pub fn solved(&self) -> bool {
        self.status == Status::Solved && self.validated
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub workers: usize,
    pub runs: usize,
    pub solve_rate: f64,
    pub trimmed_mean_ms: f64,
    pub worst_ms: f64,
    pub best_ms: f64,
    pub stddev_ms: f64,
    pub speedup: Option<f64>,
    pub worst_case_speedup: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub spec: BenchmarkSpec,
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

impl SuiteReport {
    pub fn row(&self, workers: usize) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| r.workers == workers)
    }

    pub fn runs_for(&self, workers: usize) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().filter(move |r| r.workers == workers)
    }

    /// Writes `summary.csv` and `runs.json` into `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> Result<(), BenchError> {
        let out = |e: &dyn std::fmt::Display| BenchError::Output(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(|e| out(&e))?;
        let mut csv = csv::Writer::from_path(dir.join("summary.csv")).map_err(|e| out(&e))?;
        for row in &self.summary {
            csv.serialize(row).map_err(|e| out(&e))?;
        }
        csv.flush().map_err(|e| out(&e))?;
        let json = serde_json::to_string_pretty(self).map_err(|e| out(&e))?;
        fs::write(dir.join("runs.json"), json).map_err(|e| out(&e))?;
        Ok(())
    }
}

/// Runs every worker count in turn, `spec.runs` times each. Run `r` uses
/// master seed `spec.master_seed + r` whatever the worker count.
/// `on_run` sees each record as soon as it exists.
pub fn run_suite(
    spec: &BenchmarkSpec,
    mut on_run: impl FnMut(&RunRecord),
) -> Result<SuiteReport, BenchError> {
    spec.validate()?;
    let model = spec.problem.build()?;
    let mut runs = Vec::with_capacity(spec.runs * spec.worker_counts.len());
    let mut samples: BTreeMap<usize, Vec<f64>> = BTreeMap::new();

    for &workers in &spec.worker_counts {
        for run in 0..spec.runs {
            let seed = run_seed(spec.master_seed, run);
            let pconfig = ParallelConfig {
                workers,
                start_mode: spec.start_mode,
                master_seed: seed,
                wall_clock_limit: spec.timeout,
            };
            let outcome = solve_parallel(Arc::clone(&model), &spec.params, &pconfig)?;
            let record = RunRecord {
                run,
                workers,
                seed,
                status: outcome.status,
                elapsed_ms: outcome.elapsed.as_secs_f64() * 1e3,
                cost: outcome.cost,
                winner: outcome.winner,
                iterations_total: outcome.iterations_total(),
                validated: problems::validate(model.as_ref(), outcome.config.values()),
            };
            on_run(&record);
            samples.entry(workers).or_default().push(record.elapsed_ms);
            runs.push(record);
        }
    }

    let mut summaries = BTreeMap::new();
    for (&workers, s) in &samples {
        summaries.insert(workers, summarize(s)?);
    }
    let speedups = speedup_table(&mut summaries).ok();
    let summary = summaries
        .iter()
        .map(|(&workers, s)| {
            let solved = runs.iter().filter(|r| r.workers == workers && r.solved()).count();
            let sp = speedups.as_ref().and_then(|rows| rows.iter().find(|r| r.workers == workers));
            SummaryRow {
                workers,
                runs: s.samples.len(),
                solve_rate: solved as f64 / s.samples.len() as f64,
                trimmed_mean_ms: s.trimmed_mean,
                worst_ms: s.worst,
                best_ms: s.best,
                stddev_ms: s.stddev,
                speedup: sp.map(|r| r.speedup),
                worst_case_speedup: sp.map(|r| r.worst_case_speedup),
            }
        })
        .collect();
    Ok(SuiteReport { spec: spec.clone(), runs, summary })
}
