//! Magic squares (CSPLib prob019).
//!
//! Place `1..=n²` row-major on an `n×n` board so every row, column and both
//! diagonals sum to `n(n²+1)/2`. Each line's error is its sum minus the
//! constant; the cost adds the absolute errors.

use crate::model::{is_permutation_of, Cost, ProblemModel, SwapEvaluator};

use super::ProblemError;

#[derive(Debug, Clone)]
pub struct MagicSquareProblem {
    n: usize,
    base: Vec<u32>,
    magic_constant: i64,
}

impl MagicSquareProblem {
    pub fn new(n: usize) -> Result<Self, ProblemError> {
        if n == 0 {
            return Err(ProblemError::InvalidInstance("magic square side must be at least 1".into()));
        }
        let m = n as i64;
        Ok(Self {
            n,
            base: (1..=(n * n) as u32).collect(),
            magic_constant: m * (m * m + 1) / 2,
        })
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn magic_constant(&self) -> i64 {
        self.magic_constant
    }

    /// Line indices: rows `0..n`, columns `n..2n`, main diagonal `2n`,
    /// anti-diagonal `2n + 1`.
    fn line_count(&self) -> usize {
        2 * self.n + 2
    }

    /// Lines through the cell at flat index `cell`; unused slots are `usize::MAX`.
    #[inline]
    fn lines_of(&self, cell: usize) -> [usize; 4] {
        let n = self.n;
        let (r, c) = (cell / n, cell % n);
        let mut out = [r, n + c, usize::MAX, usize::MAX];
        if r == c {
            out[2] = 2 * n;
        }
        if r + c == n - 1 {
            out[3] = 2 * n + 1;
        }
        out
    }

    fn line_sums(&self, values: &[u32]) -> Vec<i64> {
        let mut sums = vec![0i64; self.line_count()];
        for (cell, &v) in values.iter().enumerate() {
            for l in self.lines_of(cell) {
                if l != usize::MAX {
                    sums[l] += v as i64;
                }
            }
        }
        sums
    }

    fn errors_from_sums(&self, values: &[u32], sums: &[i64], errors: &mut [Cost]) {
        for (cell, e) in errors.iter_mut().enumerate().take(values.len()) {
            *e = self
                .lines_of(cell)
                .iter()
                .filter(|&&l| l != usize::MAX)
                .map(|&l| (sums[l] - self.magic_constant).unsigned_abs())
                .sum();
        }
    }
}

impl ProblemModel for MagicSquareProblem {
    fn name(&self) -> String {
        format!("magic-square-{}", self.n)
    }

    fn size(&self) -> usize {
        self.n * self.n
    }

    fn base_values(&self) -> &[u32] {
        &self.base
    }

    fn cost(&self, values: &[u32]) -> Cost {
        self.line_sums(values)
            .iter()
            .map(|s| (s - self.magic_constant).unsigned_abs())
            .sum()
    }

    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]) {
        let sums = self.line_sums(values);
        self.errors_from_sums(values, &sums, errors);
    }

    fn validate(&self, values: &[u32]) -> bool {
        if !is_permutation_of(values, &self.base) {
            return false;
        }
        let n = self.n;
        let at = |r: usize, c: usize| u64::from(values[r * n + c]);
        let mut lines: Vec<u64> = Vec::with_capacity(2 * n + 2);
        for r in 0..n {
            lines.push((0..n).map(|c| at(r, c)).sum());
        }
        for c in 0..n {
            lines.push((0..n).map(|r| at(r, c)).sum());
        }
        lines.push((0..n).map(|i| at(i, i)).sum());
        lines.push((0..n).map(|i| at(i, n - 1 - i)).sum());
        lines.windows(2).all(|w| w[0] == w[1])
    }

    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
        Box::new(MagicEvaluator { model: self, sums: Vec::new(), cost: 0 })
    }
}

struct MagicEvaluator<'a> {
    model: &'a MagicSquareProblem,
    sums: Vec<i64>,
    cost: Cost,
}

impl MagicEvaluator<'_> {
    /// Calls `f(line, delta)` for every line whose sum changes when cells
    /// `i` and `j` swap.
    #[inline]
    fn for_each_delta(&self, values: &[u32], i: usize, j: usize, mut f: impl FnMut(usize, i64)) {
        let d = values[j] as i64 - values[i] as i64;
        let li = self.model.lines_of(i);
        let lj = self.model.lines_of(j);
        for &l in &li {
            if l != usize::MAX && !lj.contains(&l) {
                f(l, d);
            }
        }
        for &l in &lj {
            if l != usize::MAX && !li.contains(&l) {
                f(l, -d);
            }
        }
    }
}

impl SwapEvaluator for MagicEvaluator<'_> {
    fn load(&mut self, values: &[u32]) -> Cost {
        self.sums = self.model.line_sums(values);
        let k = self.model.magic_constant;
        self.cost = self.sums.iter().map(|s| (s - k).unsigned_abs()).sum();
        self.cost
    }

    fn cost(&self) -> Cost {
        self.cost
    }

    fn cost_if_swapped(&mut self, values: &mut [u32], i: usize, j: usize) -> Cost {
        let k = self.model.magic_constant;
        let mut c = self.cost as i64;
        self.for_each_delta(values, i, j, |l, d| {
            let s = self.sums[l];
            c += (s + d - k).abs() - (s - k).abs();
        });
        c as Cost
    }

    fn apply_swap(&mut self, values: &mut [u32], i: usize, j: usize) {
        let k = self.model.magic_constant;
        let mut c = self.cost as i64;
        let mut changes = [(0usize, 0i64); 8];
        let mut len = 0;
        self.for_each_delta(values, i, j, |l, d| {
            changes[len] = (l, d);
            len += 1;
        });
        for &(l, d) in &changes[..len] {
            let s = self.sums[l];
            c += (s + d - k).abs() - (s - k).abs();
            self.sums[l] = s + d;
        }
        self.cost = c as Cost;
        values.swap(i, j);
    }

    fn variable_errors(&mut self, values: &[u32], errors: &mut [Cost]) {
        self.model.errors_from_sums(values, &self.sums, errors);
    }
}
