//! Command-line front end: `solve` runs one search, `bench` a full sweep.
//!
//! Exit codes: 0 when every run completed (solved or not), 2 for an invalid
//! request, 3 when the instance cannot be loaded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use adaptive_search::bench::{self, BenchError, BenchmarkSpec, ProblemSpec, RunRecord};
use adaptive_search::parallel::{solve_parallel, ParallelConfig, ParallelError, StartMode};
use adaptive_search::problems::{self, ProblemError, ProblemKind};
use adaptive_search::{ProblemModel, SolverParams};

#[derive(Parser)]
#[command(name = "adaptive-search", version, about = "Adaptive Search for permutation CSPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one (possibly parallel) search and print the result.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print the outcome as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Repeat runs over worker counts and write summary.csv and runs.json.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Worker counts to sweep, e.g. `1,2,4,8`.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize])]
        workers: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        runs: usize,
        #[arg(long, default_value = "bench-out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// all-interval, partition, magic-square or perfect-square.
    #[arg(long)]
    problem: ProblemKind,
    /// Series length, number count or board side.
    #[arg(long, conflicts_with = "instance")]
    size: Option<usize>,
    /// Perfect-square instance id (1-5).
    #[arg(long)]
    instance: Option<usize>,
    /// Perfect-square instance file: master size, then one square per line.
    #[arg(long)]
    instance_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per run, in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// key=value parameter file applied on top of the defaults.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Start from the generic defaults instead of the per-problem presets.
    #[arg(long)]
    generic_params: bool,
    #[arg(long, value_enum, default_value_t = StartArg::Random)]
    start_mode: StartArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    Random,
    Shared,
}

impl From<StartArg> for StartMode {
    fn from(s: StartArg) -> Self {
        match s {
            StartArg::Random => StartMode::IndependentRandom,
            StartArg::Shared => StartMode::SharedInitial,
        }
    }
}

/// A failure with its exit code.
struct Failure(u8, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(2, msg.to_string())
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        match e {
            ProblemError::InvalidInstance(_) => Failure(2, e.to_string()),
            ProblemError::InstanceUnavailable(_) | ProblemError::Io(_) => Failure(3, e.to_string()),
        }
    }
}

impl From<ParallelError> for Failure {
    fn from(e: ParallelError) -> Self {
        match e {
            ParallelError::SpawnFailure(_) => Failure(1, e.to_string()),
            _ => Failure::invalid(e),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Problem(p) => p.into(),
            BenchError::Parallel(p) => p.into(),
            BenchError::Output(_) => Failure(1, e.to_string()),
            _ => Failure::invalid(e),
        }
    }
}

impl Common {
    fn problem_spec(&self) -> Result<ProblemSpec, Failure> {
        let size = match (self.problem, self.size, self.instance) {
            (ProblemKind::PerfectSquare, None, Some(id)) => id,
            (ProblemKind::PerfectSquare, _, None) if self.instance_file.is_some() => 0,
            (ProblemKind::PerfectSquare, _, _) => {
                return Err(Failure::invalid("perfect-square needs --instance <id>"))
            }
            (_, Some(n), None) => n,
            (_, _, _) => return Err(Failure::invalid("this problem needs --size <n>")),
        };
        Ok(ProblemSpec { kind: self.problem, size, instance_file: self.instance_file.clone() })
    }

    fn model(&self, spec: &ProblemSpec) -> Result<Arc<dyn ProblemModel>, Failure> {
        let loaded = match (&spec.instance_file, spec.size) {
            (Some(path), 0) => problems::PerfectSquareProblem::load(path)
                .map(|p| Arc::new(p) as Arc<dyn ProblemModel>),
            _ => spec.build(),
        };
        loaded.map_err(|e| match (e, &spec.instance_file) {
            // a bad file is a load failure, not a bad request
            (ProblemError::InvalidInstance(m), Some(_)) => Failure(3, m),
            (e, _) => e.into(),
        })
    }

    fn solver_params(&self, n: usize) -> Result<SolverParams, Failure> {
        let mut params = if self.generic_params {
            SolverParams::for_size(n)
        } else {
            self.problem.tuned_params(n)
        };
        params.rng_seed = self.seed;
        if let Some(path) = &self.params {
            bench::apply_params_file(path, &mut params).map_err(Failure::invalid)?;
        }
        params.validate().map_err(Failure::invalid)?;
        Ok(params)
    }

    fn timeout(&self) -> Result<Option<Duration>, Failure> {
        self.timeout
            .map(|s| Duration::try_from_secs_f64(s).map_err(|_| Failure::invalid("bad --timeout")))
            .transpose()
    }
}

fn solve(common: &Common, workers: usize, json: bool) -> Result<(), Failure> {
    let spec = common.problem_spec()?;
    let model = common.model(&spec)?;
    let params = common.solver_params(model.size())?;
    let pconfig = ParallelConfig {
        workers,
        start_mode: common.start_mode.into(),
        master_seed: params.rng_seed,
        wall_clock_limit: common.timeout()?,
    };
    let outcome = solve_parallel(Arc::clone(&model), &params, &pconfig)?;
    let valid = problems::validate(model.as_ref(), outcome.config.values());
    if json {
        let restarts: u64 = outcome.per_worker.iter().map(|w| w.restarts_used).sum();
        let doc = serde_json::json!({
            "problem": model.name(),
            "status": outcome.status,
            "cost": outcome.cost,
            "validated": valid,
            "winner": outcome.winner,
            "iterations_total": outcome.iterations_total(),
            "restarts_used": restarts,
            "elapsed_ms": outcome.elapsed.as_secs_f64() * 1e3,
            "config": outcome.config,
            "per_worker": outcome.per_worker,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
    } else {
        println!("problem     {}", model.name());
        println!("status      {:?}", outcome.status);
        println!("cost        {}", outcome.cost);
        println!("validated   {valid}");
        if let Some(w) = outcome.winner {
            println!("winner      worker {w}");
        }
        println!("iterations  {}", outcome.iterations_total());
        for w in &outcome.per_worker {
            println!(
                "  worker {:>3}: {:?}, cost {}, {} iterations, {} restarts",
                w.worker, w.status, w.cost, w.iterations_total, w.restarts_used
            );
        }
        println!("elapsed     {:.3} ms", outcome.elapsed.as_secs_f64() * 1e3);
        let values: Vec<String> = outcome.config.values().iter().map(u32::to_string).collect();
        println!("config      {}", values.join(" "));
    }
    Ok(())
}

fn run_bench(common: &Common, workers: Vec<usize>, runs: usize, out: PathBuf) -> Result<(), Failure> {
    let problem = common.problem_spec()?;
    let model = common.model(&problem)?;
    let params = common.solver_params(model.size())?;
    let spec = BenchmarkSpec {
        problem,
        params,
        worker_counts: workers,
        runs,
        master_seed: common.seed,
        start_mode: common.start_mode.into(),
        timeout: common.timeout()?,
    };
    let report = bench::run_suite(&spec, |r: &RunRecord| {
        eprintln!(
            "workers {:>3} run {:>3}: {:?} cost {} in {:.1} ms",
            r.workers, r.run, r.status, r.cost, r.elapsed_ms
        );
    })?;
    report.write(&out)?;
    println!("workers  solve_rate  trimmed_mean_ms  worst_ms  stddev_ms  speedup");
    for row in &report.summary {
        println!(
            "{:>7}  {:>10.2}  {:>15.1}  {:>8.1}  {:>9.1}  {}",
            row.workers,
            row.solve_rate,
            row.trimmed_mean_ms,
            row.worst_ms,
            row.stddev_ms,
            row.speedup.map_or("-".to_string(), |s| format!("{s:.2}")),
        );
    }
    println!("reports written to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { common, workers, json } => solve(&common, workers, json),
        Command::Bench { common, workers, runs, out } => run_bench(&common, workers, runs, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
