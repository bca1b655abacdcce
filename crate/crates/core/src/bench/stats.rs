//! Trimmed means, spread and speedups over timing samples (milliseconds).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("need at least 3 samples for a trimmed mean, got {0}")]
    TooFewSamples(usize),
    #[error("no 1-worker baseline to compute speedups against")]
    MissingBaseline,
}

/// Mean after dropping one lowest and one highest sample.
pub fn trimmed_mean(samples: &[f64]) -> Result<f64, StatsError> {
    if samples.len() < 3 {
        return Err(StatsError::TooFewSamples(samples.len()));
    }
    let (lo, hi) = min_max(samples);
    let sum: f64 = samples.iter().sum::<f64>() - lo - hi;
    let mean = sum / (samples.len() - 2) as f64;
    // rounding can push the mean a hair outside the kept range
    Ok(mean.clamp(lo, hi))
}

/// Sample standard deviation (n − 1 denominator) over every sample.
pub fn sample_stddev(samples: &[f64]) -> f64 {
    if samples.len() < 2 || samples.iter().all(|&x| x == samples[0]) {
        return 0.0;
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

fn min_max(samples: &[f64]) -> (f64, f64) {
    samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub samples: Vec<f64>,
    pub trimmed_mean: f64,
    pub worst: f64,
    pub best: f64,
    pub stddev: f64,
    /// Filled in by [`speedup_table`]; 1 for the baseline.
    pub speedup_vs_baseline: Option<f64>,
}

pub fn summarize(samples: &[f64]) -> Result<StatsSummary, StatsError> {
    let trimmed_mean = trimmed_mean(samples)?;
    let (best, worst) = min_max(samples);
    Ok(StatsSummary {
        samples: samples.to_vec(),
        trimmed_mean,
        worst,
        best,
        stddev: sample_stddev(samples),
        speedup_vs_baseline: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedupRow {
    pub workers: usize,
    /// trimmed_mean(1) / trimmed_mean(k)
    pub speedup: f64,
    /// worst(1) / worst(k)
    pub worst_case_speedup: f64,
}

/// Speedups of every worker count against the 1-worker row. Also records
/// each speedup in its summary.
pub fn speedup_table(
    summaries: &mut BTreeMap<usize, StatsSummary>,
) -> Result<Vec<SpeedupRow>, StatsError> {
    let base = summaries.get(&1).ok_or(StatsError::MissingBaseline)?;
    let (base_mean, base_worst) = (base.trimmed_mean, base.worst);
    let mut rows = Vec::with_capacity(summaries.len());
    for (&workers, s) in summaries.iter_mut() {
        let (speedup, worst_case_speedup) = if workers == 1 {
            (1.0, 1.0)
        } else {
            (base_mean / s.trimmed_mean, base_worst / s.worst)
        };
        s.speedup_vs_baseline = Some(speedup);
        rows.push(SpeedupRow { workers, speedup, worst_case_speedup });
    }
    Ok(rows)
}
