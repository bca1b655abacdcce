//! All-interval series (CSPLib prob007).
//!
//! Find a permutation of `0..n` whose consecutive absolute differences are a
//! permutation of `1..n`. The cost counts the difference values in `1..n`
//! that do not occur.

use crate::model::{is_permutation_of, Cost, ProblemModel, SwapEvaluator};

use super::ProblemError;

#[derive(Debug, Clone)]
pub struct AllIntervalProblem {
    base: Vec<u32>,
}

impl AllIntervalProblem {
    pub fn new(n: usize) -> Result<Self, ProblemError> {
        if n < 2 {
            return Err(ProblemError::InvalidInstance(format!(
                "all-interval needs at least 2 notes, got {n}"
            )));
        }
        Ok(Self { base: (0..n as u32).collect() })
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }
}

#[inline]
fn interval(values: &[u32], k: usize) -> usize {
    values[k].abs_diff(values[k + 1]) as usize
}

fn occurrences(values: &[u32]) -> Vec<u32> {
    let mut occ = vec![0u32; values.len()];
    for k in 0..values.len().saturating_sub(1) {
        occ[interval(values, k)] += 1;
    }
    occ
}

/// Number of values in `1..n` missing from the consecutive differences.
pub fn all_interval_cost(values: &[u32]) -> Cost {
    missing(&occurrences(values))
}

fn missing(occ: &[u32]) -> Cost {
    (1..occ.len()).filter(|&v| occ[v] == 0).count() as Cost
}

impl ProblemModel for AllIntervalProblem {
    fn name(&self) -> String {
        format!("all-interval-{}", self.n())
    }

    fn size(&self) -> usize {
        self.n()
    }

    fn base_values(&self) -> &[u32] {
        &self.base
    }

    fn cost(&self, values: &[u32]) -> Cost {
        all_interval_cost(values)
    }

    /// A variable's error is the number of other differences repeating the
    /// value of each difference it takes part in.
    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]) {
        let occ = occurrences(values);
        variable_errors_from(values, &occ, errors);
    }

    fn validate(&self, values: &[u32]) -> bool {
        if !is_permutation_of(values, &self.base) {
            return false;
        }
        let mut diffs: Vec<i64> = values
            .windows(2)
            .map(|w| (w[0] as i64 - w[1] as i64).abs())
            .collect();
        diffs.sort_unstable();
        diffs.iter().copied().eq(1..values.len() as i64)
    }

    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
        Box::new(AllIntervalEvaluator {
            occ: vec![0; self.n()],
            missing: 0,
        })
    }
}

fn variable_errors_from(values: &[u32], occ: &[u32], errors: &mut [Cost]) {
    let n = values.len();
    errors.iter_mut().for_each(|e| *e = 0);
    for k in 0..n - 1 {
        let dup = (occ[interval(values, k)] - 1) as Cost;
        errors[k] += dup;
        errors[k + 1] += dup;
    }
}

struct AllIntervalEvaluator {
    occ: Vec<u32>,
    missing: Cost,
}

impl AllIntervalEvaluator {
    #[inline]
    fn remove(&mut self, d: usize) {
        self.occ[d] -= 1;
        if self.occ[d] == 0 {
            self.missing += 1;
        }
    }

    #[inline]
    fn add(&mut self, d: usize) {
        if self.occ[d] == 0 {
            self.missing -= 1;
        }
        self.occ[d] += 1;
    }

    /// Difference indices touched by swapping positions `i` and `j`.
    fn touched(n: usize, i: usize, j: usize) -> ([usize; 4], usize) {
        let mut out = [0; 4];
        let mut len = 0;
        for p in [i, j] {
            for k in [p.wrapping_sub(1), p] {
                if k < n - 1 && !out[..len].contains(&k) {
                    out[len] = k;
                    len += 1;
                }
            }
        }
        (out, len)
    }
}

impl SwapEvaluator for AllIntervalEvaluator {
    fn load(&mut self, values: &[u32]) -> Cost {
        self.occ = occurrences(values);
        self.missing = missing(&self.occ);
        self.missing
    }

    fn cost(&self) -> Cost {
        self.missing
    }

    fn cost_if_swapped(&mut self, values: &mut [u32], i: usize, j: usize) -> Cost {
        self.apply_swap(values, i, j);
        let c = self.missing;
        self.apply_swap(values, i, j);
        c
    }

    fn apply_swap(&mut self, values: &mut [u32], i: usize, j: usize) {
        let (ks, len) = Self::touched(values.len(), i, j);
        for &k in &ks[..len] {
            self.remove(interval(values, k));
        }
        values.swap(i, j);
        for &k in &ks[..len] {
            self.add(interval(values, k));
        }
    }

    fn variable_errors(&mut self, values: &[u32], errors: &mut [Cost]) {
        variable_errors_from(values, &self.occ, errors);
    }
}
