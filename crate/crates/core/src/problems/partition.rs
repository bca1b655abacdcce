//! Number partitioning.
//!
//! Split `1..=n` into two halves of equal size, equal sum and equal sum of
//! squares. The first `n/2` positions form group A, the rest group B. A
//! solution exists iff `n` is a multiple of 8.

use crate::model::{is_permutation_of, Cost, ProblemModel, SwapEvaluator};

use super::ProblemError;

#[derive(Debug, Clone)]
pub struct PartitionProblem {
    base: Vec<u32>,
    target_sum: i64,
    target_sq_sum: i64,
}

impl PartitionProblem {
    pub fn new(n: usize) -> Result<Self, ProblemError> {
        if n == 0 || !n.is_multiple_of(8) {
            return Err(ProblemError::InvalidInstance(format!(
                "number partitioning needs a positive multiple of 8, got {n}"
            )));
        }
        let m = n as i64;
        Ok(Self {
            base: (1..=n as u32).collect(),
            target_sum: m * (m + 1) / 4,
            target_sq_sum: m * (m + 1) * (2 * m + 1) / 12,
        })
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn target_sum(&self) -> i64 {
        self.target_sum
    }

    pub fn target_sq_sum(&self) -> i64 {
        self.target_sq_sum
    }

    /// Signed errors of the sum and square-sum constraints on group A.
    pub fn constraint_errors(&self, values: &[u32]) -> [i64; 2] {
        let (sum, sq) = half_sums(&values[..self.n() / 2]);
        [sum - self.target_sum, sq - self.target_sq_sum]
    }

    #[inline]
    fn cost_from(&self, sum: i64, sq: i64) -> Cost {
        (sum - self.target_sum).unsigned_abs() + (sq - self.target_sq_sum).unsigned_abs()
    }
}

fn half_sums(half: &[u32]) -> (i64, i64) {
    half.iter().fold((0, 0), |(s, q), &v| {
        let v = v as i64;
        (s + v, q + v * v)
    })
}

impl ProblemModel for PartitionProblem {
    fn name(&self) -> String {
        format!("partition-{}", self.n())
    }

    fn size(&self) -> usize {
        self.n()
    }

    fn base_values(&self) -> &[u32] {
        &self.base
    }

    fn cost(&self, values: &[u32]) -> Cost {
        let [e1, e2] = self.constraint_errors(values);
        e1.unsigned_abs() + e2.unsigned_abs()
    }

    /// Every variable appears in both constraints, so all errors equal the cost.
    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]) {
        let c = self.cost(values);
        errors.iter_mut().for_each(|e| *e = c);
    }

    /// Swaps inside one group leave both sums unchanged, so only the other
    /// group is offered.
    fn swap_partners(&self, culprit: usize, partners: &mut Vec<usize>) {
        let half = self.n() / 2;
        partners.clear();
        if culprit < half {
            partners.extend(half..self.n());
        } else {
            partners.extend(0..half);
        }
    }

    fn validate(&self, values: &[u32]) -> bool {
        if !is_permutation_of(values, &self.base) {
            return false;
        }
        let (a, b) = values.split_at(self.n() / 2);
        let sum = |h: &[u32]| h.iter().map(|&v| u128::from(v)).sum::<u128>();
        let sq = |h: &[u32]| h.iter().map(|&v| u128::from(v) * u128::from(v)).sum::<u128>();
        a.len() == b.len() && sum(a) == sum(b) && sq(a) == sq(b)
    }

    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
        Box::new(PartitionEvaluator { model: self, sum: 0, sq: 0 })
    }
}

struct PartitionEvaluator<'a> {
    model: &'a PartitionProblem,
    sum: i64,
    sq: i64,
}

impl PartitionEvaluator<'_> {
    /// Group-A sums after swapping positions `i` and `j`.
    #[inline]
    fn swapped_sums(&self, values: &[u32], i: usize, j: usize) -> (i64, i64) {
        let half = self.model.n() / 2;
        if (i < half) == (j < half) {
            return (self.sum, self.sq);
        }
        let (a, b) = if i < half { (i, j) } else { (j, i) };
        let out = values[a] as i64;
        let inn = values[b] as i64;
        (self.sum - out + inn, self.sq - out * out + inn * inn)
    }
}

impl SwapEvaluator for PartitionEvaluator<'_> {
    fn load(&mut self, values: &[u32]) -> Cost {
        (self.sum, self.sq) = half_sums(&values[..self.model.n() / 2]);
        self.cost()
    }

    fn cost(&self) -> Cost {
        self.model.cost_from(self.sum, self.sq)
    }

    fn cost_if_swapped(&mut self, values: &mut [u32], i: usize, j: usize) -> Cost {
        let (s, q) = self.swapped_sums(values, i, j);
        self.model.cost_from(s, q)
    }

    fn apply_swap(&mut self, values: &mut [u32], i: usize, j: usize) {
        (self.sum, self.sq) = self.swapped_sums(values, i, j);
        values.swap(i, j);
    }

    fn variable_errors(&mut self, _values: &[u32], errors: &mut [Cost]) {
        let c = self.cost();
        errors.iter_mut().for_each(|e| *e = c);
    }
}
