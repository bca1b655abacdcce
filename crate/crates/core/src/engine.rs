//! Sequential Adaptive Search.
//!
//! One engine owns a configuration, a tabu memory and a random stream. Each
//! iteration projects constraint errors on variables, picks the worst
//! non-tabu variable (the culprit), and tries every swap involving it. The
//! best strictly improving swap is applied; if none exists the culprit is
//! frozen for `tabu_tenure` iterations, and once more than `reset_limit`
//! variables have been frozen since the last reset a random fraction of the
//! configuration is re-shuffled. After `max_iterations` iterations the engine restarts from a
//! fresh random configuration, at most `max_restarts` times.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{is_permutation_of, Cost, ProblemModel, SwapEvaluator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),
    #[error("initial configuration is not a permutation of the model's base values")]
    InvalidInitial,
}

/// Returned by [`select_culprit`] when every variable is frozen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("every variable is marked tabu")]
pub struct AllTabu;

/// An assignment of the model's base values to its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<u32>);

impl Configuration {
    pub fn new(values: Vec<u32>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl From<Vec<u32>> for Configuration {
    fn from(values: Vec<u32>) -> Self {
        Self(values)
    }
}

/// Tuning knobs of the search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Iterations a variable stays frozen after yielding no improving move.
    pub tabu_tenure: u64,
    /// A partial reset happens once more than this many freezes have
    /// occurred since the previous reset.
    pub reset_limit: usize,
    /// Fraction of variables re-shuffled by a partial reset.
    pub reset_percentage: f64,
    /// Iterations per restart.
    pub max_iterations: u64,
    /// Restarts after the first descent.
    pub max_restarts: u64,
    /// Seed of the stream returned by [`SolverParams::rng`].
    pub rng_seed: u64,
    /// Probability of taking the best equal-cost swap instead of freezing
    /// the culprit when no swap improves. Zero keeps the strict rule.
    #[serde(default)]
    pub plateau_probability: f64,
}

impl SolverParams {
    /// Defaults for a model with `n` variables.
    pub fn for_size(n: usize) -> Self {
        Self {
            tabu_tenure: 10,
            reset_limit: (n / 10).max(2),
            reset_percentage: 0.1,
            max_iterations: 100 * n.max(1) as u64,
            max_restarts: 10,
            rng_seed: 0,
            plateau_probability: 0.0,
        }
    }

    /// The single-worker random stream for `rng_seed`; a one-worker parallel
    /// group with master seed `rng_seed` draws from the same stream.
    pub fn rng(&self) -> crate::rng::SearchRng {
        crate::rng::worker_rng(self.rng_seed, 0)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.tabu_tenure < 1 {
            return Err(EngineError::InvalidParams("tabu_tenure must be at least 1".into()));
        }
        if !(self.reset_percentage > 0.0 && self.reset_percentage <= 1.0) {
            return Err(EngineError::InvalidParams(format!(
                "reset_percentage must lie in (0, 1], got {}",
                self.reset_percentage
            )));
        }
        if self.max_iterations < 1 {
            return Err(EngineError::InvalidParams("max_iterations must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.plateau_probability) {
            return Err(EngineError::InvalidParams(format!(
                "plateau_probability must lie in [0, 1], got {}",
                self.plateau_probability
            )));
        }
        Ok(())
    }
}

/// Counters and tabu memory of a running search.
#[derive(Debug, Clone)]
pub struct SearchState {
    /// Iterations since the current restart began.
    pub iteration: u64,
    /// Restarts performed so far (0 during the first descent).
    pub restart: u64,
    /// Variable `i` is tabu while `iteration < tabu_until[i]`.
    pub tabu_until: Vec<u64>,
    /// Variables frozen since the last reset or restart. Marks that expire
    /// on their own still count.
    pub tabu_count: usize,
    /// Best configuration since the current restart began.
    pub restart_best_config: Configuration,
    pub restart_best_cost: Cost,
    /// Best configuration over the whole run.
    pub best_config: Configuration,
    pub best_cost: Cost,
}

impl SearchState {
    pub fn new(initial: Configuration, cost: Cost) -> Self {
        Self {
            iteration: 0,
            restart: 0,
            tabu_until: vec![0; initial.len()],
            tabu_count: 0,
            restart_best_config: initial.clone(),
            restart_best_cost: cost,
            best_config: initial,
            best_cost: cost,
        }
    }

    pub fn is_tabu(&self, var: usize) -> bool {
        self.tabu_until[var] > self.iteration
    }

    /// Number of variables whose mark has not yet expired.
    pub fn frozen_now(&self) -> usize {
        self.tabu_until.iter().filter(|&&t| t > self.iteration).count()
    }

    pub fn mark_tabu(&mut self, var: usize, tenure: u64) {
        self.tabu_until[var] = self.iteration + tenure;
        self.tabu_count += 1;
    }

    pub fn clear_tabu(&mut self) {
        self.tabu_until.iter_mut().for_each(|t| *t = 0);
        self.tabu_count = 0;
    }

    fn unfreeze(&mut self, var: usize) {
        if self.is_tabu(var) {
            self.tabu_count = self.tabu_count.saturating_sub(1);
        }
        self.tabu_until[var] = 0;
    }

    fn begin_restart(&mut self, config: &Configuration, cost: Cost) {
        self.iteration = 0;
        self.clear_tabu();
        self.restart_best_config.clone_from(config);
        self.restart_best_cost = cost;
        self.record(config, cost);
    }

    /// Records `config` as best-so-far where it improves on the current bests.
    fn record(&mut self, config: &Configuration, cost: Cost) {
        if cost < self.restart_best_cost {
            self.restart_best_config.clone_from(config);
            self.restart_best_cost = cost;
        }
        if cost < self.best_cost {
            self.best_config.clone_from(config);
            self.best_cost = cost;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Exhausted,
    Interrupted,
}

/// Result of one search. `config`/`cost` always hold the best configuration
/// found, solved or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub config: Configuration,
    pub cost: Cost,
    pub iterations_total: u64,
    pub restarts_used: u64,
}

/// Swap of the culprit with `partner`, yielding a configuration of cost `cost`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapMove {
    pub culprit: usize,
    pub partner: usize,
    pub cost: Cost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveEvaluation {
    Improving(SwapMove),
    /// No swap lowers the cost; `best` is the cheapest candidate, if any.
    NoImprovingMove { best: Option<SwapMove> },
}

/// When to give up early. The stop flag and deadline are checked once per
/// iteration.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchControl<'a> {
    pub stop: Option<&'a AtomicBool>,
    pub deadline: Option<Instant>,
}

impl<'a> SearchControl<'a> {
    pub fn with_budget(budget: Option<Duration>) -> Self {
        Self {
            stop: None,
            deadline: budget.map(|b| Instant::now() + b),
        }
    }

    fn should_stop(&self) -> bool {
        if let Some(flag) = self.stop {
            if flag.load(Ordering::Relaxed) {
                return true;
            }
        }
        matches!(self.deadline, Some(d) if Instant::now() >= d)
    }
}

/// What happened in one iteration, as seen by a [`SearchObserver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// A fresh random configuration was drawn.
    Restart,
    Moved { culprit: usize, partner: usize },
    /// The culprit had no improving move and was frozen.
    Frozen { culprit: usize },
    /// Part of the configuration was re-shuffled.
    Reset,
}

/// Hook called after every state change of the engine. Tests use it to check
/// invariants on the full trajectory.
pub trait SearchObserver {
    fn on_step(&mut self, kind: StepKind, config: &Configuration, cost: Cost, state: &SearchState);
}

impl SearchObserver for () {
    #[inline]
    fn on_step(&mut self, _: StepKind, _: &Configuration, _: Cost, _: &SearchState) {}
}

impl<F> SearchObserver for F
where
    F: FnMut(StepKind, &Configuration, Cost, &SearchState),
{
    fn on_step(&mut self, kind: StepKind, config: &Configuration, cost: Cost, state: &SearchState) {
        self(kind, config, cost, state)
    }
}

/// Uniformly shuffled permutation of `base`.
pub fn random_permutation<R: Rng + ?Sized>(base: &[u32], rng: &mut R) -> Configuration {
    let mut values = base.to_vec();
    values.shuffle(rng);
    Configuration(values)
}

/// Index of the non-tabu variable with the highest error, ties broken
/// uniformly at random.
pub fn select_culprit<R: Rng + ?Sized>(
    errors: &[Cost],
    state: &SearchState,
    rng: &mut R,
) -> Result<usize, AllTabu> {
    let mut best = None;
    let mut best_err = 0;
    let mut ties = 0u32;
    for (i, &e) in errors.iter().enumerate() {
        if state.is_tabu(i) {
            continue;
        }
        if best.is_none() || e > best_err {
            best = Some(i);
            best_err = e;
            ties = 1;
        } else if e == best_err {
            ties += 1;
            if rng.gen_range(0..ties) == 0 {
                best = Some(i);
            }
        }
    }
    best.ok_or(AllTabu)
}

/// Best swap for `culprit` among the model's candidate partners.
///
/// `evaluator` must be loaded with `config`. A move counts as improving only
/// if it strictly lowers the cost.
pub fn evaluate_moves_with<R: Rng + ?Sized>(
    model: &dyn ProblemModel,
    evaluator: &mut dyn SwapEvaluator,
    config: &mut Configuration,
    culprit: usize,
    partners: &mut Vec<usize>,
    rng: &mut R,
) -> MoveEvaluation {
    model.swap_partners(culprit, partners);
    let current = evaluator.cost();
    let mut best: Option<SwapMove> = None;
    let mut ties = 0u32;
    for &j in partners.iter() {
        let c = evaluator.cost_if_swapped(config.values_mut(), culprit, j);
        match best {
            Some(b) if c > b.cost => {}
            Some(b) if c == b.cost => {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    best = Some(SwapMove { culprit, partner: j, cost: c });
                }
            }
            _ => {
                best = Some(SwapMove { culprit, partner: j, cost: c });
                ties = 1;
            }
        }
    }
    match best {
        Some(m) if m.cost < current => MoveEvaluation::Improving(m),
        best => MoveEvaluation::NoImprovingMove { best },
    }
}

/// Convenience form of [`evaluate_moves_with`] that builds its own evaluator.
pub fn evaluate_moves<R: Rng + ?Sized>(
    model: &dyn ProblemModel,
    config: &Configuration,
    culprit: usize,
    rng: &mut R,
) -> MoveEvaluation {
    let mut eval = model.evaluator();
    let mut config = config.clone();
    eval.load(config.values());
    let mut partners = Vec::new();
    evaluate_moves_with(model, eval.as_mut(), &mut config, culprit, &mut partners, rng)
}

/// Number of positions a partial reset touches.
pub fn reset_size(n: usize, reset_percentage: f64) -> usize {
    ((reset_percentage * n as f64).round() as usize).clamp(1, n.max(1))
}

/// Re-permutes the values held at `reset_size(n, reset_percentage)` randomly
/// chosen positions among themselves and unfreezes those positions.
/// Returns the chosen positions.
pub fn partial_reset<R: Rng + ?Sized>(
    config: &mut Configuration,
    reset_percentage: f64,
    state: &mut SearchState,
    rng: &mut R,
) -> Vec<usize> {
    let n = config.len();
    if n == 0 {
        return Vec::new();
    }
    let k = reset_size(n, reset_percentage);
    let positions = index::sample(rng, n, k).into_vec();
    let mut held: Vec<u32> = positions.iter().map(|&p| config.0[p]).collect();
    held.shuffle(rng);
    for (&p, v) in positions.iter().zip(held) {
        config.0[p] = v;
        state.unfreeze(p);
    }
    positions
}

/// Runs the restart loop with an optional wall-clock budget.
pub fn solve_sequential<R: Rng + ?Sized>(
    model: &dyn ProblemModel,
    params: &SolverParams,
    rng: &mut R,
    budget: Option<Duration>,
) -> Result<Outcome, EngineError> {
    search(model, params, rng, &SearchControl::with_budget(budget), None, &mut ())
}

/// Full-featured entry point: external stop flag, optional starting
/// configuration for the first descent, and a step observer.
pub fn search<R: Rng + ?Sized, O: SearchObserver + ?Sized>(
    model: &dyn ProblemModel,
    params: &SolverParams,
    rng: &mut R,
    control: &SearchControl<'_>,
    initial: Option<&Configuration>,
    observer: &mut O,
) -> Result<Outcome, EngineError> {
    params.validate()?;
    let n = model.size();
    let base = model.base_values();
    if let Some(init) = initial {
        if !is_permutation_of(init.values(), base) {
            return Err(EngineError::InvalidInitial);
        }
    }

    let mut eval = model.evaluator();
    let mut errors = vec![0; n];
    let mut partners = Vec::with_capacity(n);

    let mut config = match initial {
        Some(c) => c.clone(),
        None => random_permutation(base, rng),
    };
    let mut cost = eval.load(config.values());
    let mut state = SearchState::new(config.clone(), cost);
    let mut iterations_total = 0;

    let finish = |status, state: SearchState, iterations_total, restart| Outcome {
        status,
        cost: state.best_cost,
        config: state.best_config,
        iterations_total,
        restarts_used: restart,
    };

    loop {
        observer.on_step(StepKind::Restart, &config, cost, &state);
        loop {
            if cost == 0 {
                let restart = state.restart;
                return Ok(finish(Status::Solved, state, iterations_total, restart));
            }
            if control.should_stop() {
                let restart = state.restart;
                return Ok(finish(Status::Interrupted, state, iterations_total, restart));
            }
            if state.iteration >= params.max_iterations {
                break;
            }
            state.iteration += 1;
            iterations_total += 1;

            eval.variable_errors(config.values(), &mut errors);
            let culprit = match select_culprit(&errors, &state, rng) {
                Ok(c) => c,
                Err(AllTabu) => {
                    cost = reset(&mut config, eval.as_mut(), params, &mut state, rng);
                    observer.on_step(StepKind::Reset, &config, cost, &state);
                    continue;
                }
            };

            match evaluate_moves_with(model, eval.as_mut(), &mut config, culprit, &mut partners, rng) {
                MoveEvaluation::Improving(m) => {
                    eval.apply_swap(config.values_mut(), m.culprit, m.partner);
                    cost = eval.cost();
                    debug_assert_eq!(cost, m.cost);
                    state.record(&config, cost);
                    observer.on_step(
                        StepKind::Moved { culprit, partner: m.partner },
                        &config,
                        cost,
                        &state,
                    );
                }
                MoveEvaluation::NoImprovingMove { best: Some(m) }
                    if m.cost == cost
                        && params.plateau_probability > 0.0
                        && rng.gen_bool(params.plateau_probability) =>
                {
                    eval.apply_swap(config.values_mut(), m.culprit, m.partner);
                    observer.on_step(
                        StepKind::Moved { culprit, partner: m.partner },
                        &config,
                        cost,
                        &state,
                    );
                }
                MoveEvaluation::NoImprovingMove { .. } => {
                    state.mark_tabu(culprit, params.tabu_tenure);
                    observer.on_step(StepKind::Frozen { culprit }, &config, cost, &state);
                    if state.tabu_count > params.reset_limit {
                        cost = reset(&mut config, eval.as_mut(), params, &mut state, rng);
                        observer.on_step(StepKind::Reset, &config, cost, &state);
                    }
                }
            }
        }

        if state.restart >= params.max_restarts {
            let restart = state.restart;
            return Ok(finish(Status::Exhausted, state, iterations_total, restart));
        }
        state.restart += 1;
        config = random_permutation(base, rng);
        cost = eval.load(config.values());
        state.begin_restart(&config, cost);
    }
}

/// Partial reset; marks on untouched variables run out on their own.
fn reset<R: Rng + ?Sized>(
    config: &mut Configuration,
    eval: &mut dyn SwapEvaluator,
    params: &SolverParams,
    state: &mut SearchState,
    rng: &mut R,
) -> Cost {
    partial_reset(config, params.reset_percentage, state, rng);
    state.tabu_count = 0;
    let cost = eval.load(config.values());
    state.record(config, cost);
    cost
}
