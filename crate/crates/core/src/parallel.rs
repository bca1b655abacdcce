//! Independent multi-start search.
//!
//! A controller launches one engine per worker thread, each on its own random
//! stream, and waits. The first worker to reach a zero-cost configuration
//! reports it; the controller then raises a shared stop flag, joins every
//! worker and returns. Workers never exchange search state: the only shared
//! data are the stop flag and the result channel.
//!
//! Elapsed time runs from just before the first worker is spawned to just
//! after the last one has been joined.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{self, Configuration, EngineError, Outcome, SearchControl, SolverParams, Status};
use crate::model::{Cost, ProblemModel};
use crate::rng::{shared_rng, worker_rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartMode {
    /// Every worker draws its own random initial configuration.
    IndependentRandom,
    /// All workers start from one common random configuration and diverge
    /// through their own random choices.
    SharedInitial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelConfig {
    pub workers: usize,
    pub start_mode: StartMode,
    pub master_seed: u64,
    pub wall_clock_limit: Option<Duration>,
}

impl ParallelConfig {
    pub fn new(workers: usize, master_seed: u64) -> Self {
        Self {
            workers,
            start_mode: StartMode::IndependentRandom,
            master_seed,
            wall_clock_limit: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParallelError {
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("no worker could be started: {0}")]
    SpawnFailure(String),
}

/// What one worker ended with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkerReport {
    pub worker: usize,
    pub status: Status,
    pub cost: Cost,
    pub iterations_total: u64,
    pub restarts_used: u64,
    /// Time from group launch until the worker finished its search.
    pub finished_after: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelOutcome {
    pub status: Status,
    /// The winner's solution, or the cheapest pseudo-solution over workers.
    pub config: Configuration,
    pub cost: Cost,
    pub winner: Option<usize>,
    pub elapsed: Duration,
    pub per_worker: Vec<WorkerReport>,
    /// Workers that could not be spawned, with the reason.
    pub spawn_failures: Vec<(usize, String)>,
}

impl ParallelOutcome {
    pub fn iterations_total(&self) -> u64 {
        self.per_worker.iter().map(|w| w.iterations_total).sum()
    }
}

struct Finished {
    worker: usize,
    outcome: Result<Outcome, EngineError>,
    at: Instant,
}

/// A launched group of workers.
pub struct SearchGroup {
    stop: Arc<AtomicBool>,
    handles: Vec<JoinHandle<()>>,
    results: mpsc::Receiver<Finished>,
    started_at: Instant,
    spawn_failures: Vec<(usize, String)>,
}

impl SearchGroup {
    /// Spawns `pconfig.workers` engines. Workers that fail to spawn are
    /// recorded; launching fails only if none could be started.
    pub fn launch(
        model: Arc<dyn ProblemModel>,
        params: &SolverParams,
        pconfig: &ParallelConfig,
    ) -> Result<Self, ParallelError> {
        if pconfig.workers == 0 {
            return Err(ParallelError::NoWorkers);
        }
        params.validate()?;

        let started_at = Instant::now();
        let deadline = pconfig.wall_clock_limit.map(|d| started_at + d);
        let stop = Arc::new(AtomicBool::new(false));
        let shared_start = match pconfig.start_mode {
            StartMode::SharedInitial => Some(Arc::new(engine::random_permutation(
                model.base_values(),
                &mut shared_rng(pconfig.master_seed),
            ))),
            StartMode::IndependentRandom => None,
        };

        let (tx, results) = mpsc::channel();
        let mut handles = Vec::with_capacity(pconfig.workers);
        let mut spawn_failures = Vec::new();
        for worker in 0..pconfig.workers {
            let model = Arc::clone(&model);
            let params = params.clone();
            let stop = Arc::clone(&stop);
            let tx = tx.clone();
            let start = shared_start.clone();
            let seed = pconfig.master_seed;
            let spawned = thread::Builder::new()
                .name(format!("search-worker-{worker}"))
                .spawn(move || {
                    let mut rng = worker_rng(seed, worker);
                    let control = SearchControl { stop: Some(&stop), deadline };
                    let outcome =
                        engine::search(model.as_ref(), &params, &mut rng, &control, start.as_deref(), &mut ());
                    // the controller may have dropped the receiver already
                    let _ = tx.send(Finished { worker, outcome, at: Instant::now() });
                });
            match spawned {
                Ok(h) => handles.push(h),
                Err(e) => spawn_failures.push((worker, e.to_string())),
            }
        }
        if handles.is_empty() {
            let reason = spawn_failures.first().map(|(_, e)| e.clone()).unwrap_or_default();
            return Err(ParallelError::SpawnFailure(reason));
        }
        Ok(Self { stop, handles, results, started_at, spawn_failures })
    }

    /// Asks every worker to stop at its next iteration boundary and waits for
    /// all of them.
    pub fn stop_broadcast(self) -> Result<ParallelOutcome, ParallelError> {
        self.stop.store(true, Ordering::Relaxed);
        self.collect()
    }

    /// Waits until a worker solves the problem (then stops the others) or
    /// every worker has finished on its own.
    pub fn wait(self) -> Result<ParallelOutcome, ParallelError> {
        self.collect()
    }

    fn collect(self) -> Result<ParallelOutcome, ParallelError> {
        let SearchGroup { stop, handles, results, started_at, spawn_failures } = self;
        let mut finished = Vec::with_capacity(handles.len());
        // ends once every worker has sent its result and dropped its sender
        for msg in results.iter() {
            if matches!(&msg.outcome, Ok(o) if o.status == Status::Solved) {
                stop.store(true, Ordering::Relaxed);
            }
            finished.push(msg);
            if finished.len() == handles.len() {
                break;
            }
        }
        for h in handles {
            if let Err(panic) = h.join() {
                std::panic::resume_unwind(panic);
            }
        }
        let elapsed = started_at.elapsed();

        let mut outcomes = Vec::with_capacity(finished.len());
        for f in finished {
            outcomes.push((f.worker, f.outcome?, f.at.duration_since(started_at)));
        }
        outcomes.sort_by_key(|(w, _, _)| *w);
        Ok(aggregate(outcomes, elapsed, spawn_failures))
    }
}

fn aggregate(
    outcomes: Vec<(usize, Outcome, Duration)>,
    elapsed: Duration,
    spawn_failures: Vec<(usize, String)>,
) -> ParallelOutcome {
    let per_worker = outcomes
        .iter()
        .map(|(w, o, at)| WorkerReport {
            worker: *w,
            status: o.status,
            cost: o.cost,
            iterations_total: o.iterations_total,
            restarts_used: o.restarts_used,
            finished_after: *at,
        })
        .collect();

    // earliest solver wins; outcomes are sorted by id so ties go to the lowest
    let winner = outcomes
        .iter()
        .filter(|(_, o, _)| o.status == Status::Solved)
        .min_by_key(|(_, _, at)| *at);
    let (status, chosen, winner_id) = match winner {
        Some((w, o, _)) => (Status::Solved, o, Some(*w)),
        None => {
            let (_, best, _) = outcomes
                .iter()
                .min_by_key(|(_, o, _)| o.cost)
                .expect("at least one worker ran");
            let status = if outcomes.iter().any(|(_, o, _)| o.status == Status::Interrupted) {
                Status::Interrupted
            } else {
                Status::Exhausted
            };
            (status, best, None)
        }
    };
    ParallelOutcome {
        status,
        config: chosen.config.clone(),
        cost: chosen.cost,
        winner: winner_id,
        elapsed,
        per_worker,
        spawn_failures,
    }
}

/// Launches a group and waits for its result.
pub fn solve_parallel(
    model: Arc<dyn ProblemModel>,
    params: &SolverParams,
    pconfig: &ParallelConfig,
) -> Result<ParallelOutcome, ParallelError> {
    SearchGroup::launch(model, params, pconfig)?.wait()
}
