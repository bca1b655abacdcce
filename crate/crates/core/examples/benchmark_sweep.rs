//! Times repeated runs at several worker counts and writes summary.csv and
//! runs.json.
//!
//!     cargo run --release --example benchmark_sweep -- out-dir

use std::path::PathBuf;
use std::time::Duration;

use adaptive_search::bench::{run_suite, BenchmarkSpec, ProblemSpec};
use adaptive_search::parallel::StartMode;
use adaptive_search::problems::ProblemKind;

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "bench-out".into()));
    let kind = ProblemKind::Partition;
    let spec = BenchmarkSpec {
        problem: ProblemSpec::new(kind, 128),
        params: kind.tuned_params(128),
        worker_counts: vec![1, 2, 4],
        runs: 10,
        master_seed: 7,
        start_mode: StartMode::IndependentRandom,
        timeout: Some(Duration::from_secs(10)),
    };
    let report = run_suite(&spec, |_| {}).unwrap();
    for row in &report.summary {
        println!(
            "{} workers: solved {:.0}%, trimmed mean {:.2} ms, worst {:.2} ms, speedup {:.2}",
            row.workers,
            row.solve_rate * 100.0,
            row.trimmed_mean_ms,
            row.worst_ms,
            row.speedup.unwrap_or(f64::NAN)
        );
    }
    report.write(&out).unwrap();
    println!("wrote {}", out.display());
}
