//! Benchmark harness: repeated runs per worker count, trimmed statistics,
//! speedups, and CSV/JSON reports.
//!
//! Each run is timed from just before its workers start to just after they
//! have all been joined. A run counts as solved only if the independent
//! validator accepts its configuration.

mod params_file;
mod stats;
mod suite;

pub use params_file::{apply_params_file, apply_params_text, ParamsFileError};
pub use stats::{
    sample_stddev, speedup_table, summarize, trimmed_mean, SpeedupRow, StatsError, StatsSummary,
};
pub use suite::{
    run_suite, BenchError, BenchmarkSpec, ProblemSpec, RunRecord, SuiteReport, SummaryRow,
};
