//! The problem-model interface consumed by the search engine.
//!
//! A model describes a permutation CSP: `size()` variables, each holding one
//! value of `base_values()`, with a non-negative cost that is zero exactly at
//! solutions. Moves are swaps of two variables' values.
//!
//! Cost evaluation during search goes through a [`SwapEvaluator`], which a
//! model may implement incrementally. [`FullRecompute`] is the fallback that
//! re-evaluates the whole configuration for every candidate swap.

/// Cost of a configuration. Zero means every constraint holds.
pub type Cost = u64;

pub trait ProblemModel: Send + Sync {
    /// Short human-readable name, e.g. `magic-square-10`.
    fn name(&self) -> String;

    /// Number of variables.
    fn size(&self) -> usize;

    /// The values to permute. Its length equals `size()`.
    fn base_values(&self) -> &[u32];

    /// Total cost computed from scratch.
    fn cost(&self, values: &[u32]) -> Cost;

    /// Projects constraint errors onto variables. `errors` has length `size()`.
    ///
    /// Each variable's error is the sum of the errors of the constraint terms
    /// it appears in. Models whose variables all play the same role may write
    /// the same value everywhere, leaving the culprit choice to tie-breaking.
    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]);

    /// Variables whose values may be swapped with `culprit`.
    fn swap_partners(&self, culprit: usize, partners: &mut Vec<usize>) {
        partners.clear();
        partners.extend((0..self.size()).filter(|&j| j != culprit));
    }

    /// Solution check that does not share code with `cost`.
    fn validate(&self, values: &[u32]) -> bool;

    /// A fresh evaluator for one search engine.
    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_>;
}

/// Per-engine cost bookkeeping for swap moves.
///
/// `load` must be called before any other method and again whenever the
/// configuration changes other than through `apply_swap`.
pub trait SwapEvaluator {
    /// Rebuilds cached state for `values` and returns its cost.
    fn load(&mut self, values: &[u32]) -> Cost;

    /// Cost of the loaded configuration.
    fn cost(&self) -> Cost;

    /// Cost the configuration would have after swapping positions `i` and `j`.
    /// Leaves `values` and the cached state unchanged.
    fn cost_if_swapped(&mut self, values: &mut [u32], i: usize, j: usize) -> Cost;

    /// Swaps positions `i` and `j` in `values` and updates cached state.
    fn apply_swap(&mut self, values: &mut [u32], i: usize, j: usize);

    /// Per-variable errors of the loaded configuration.
    fn variable_errors(&mut self, values: &[u32], errors: &mut [Cost]);
}

/// Evaluator that recomputes the full cost for every query.
pub struct FullRecompute<'a, M: ?Sized> {
    model: &'a M,
    cost: Cost,
}

impl<'a, M: ProblemModel + ?Sized> FullRecompute<'a, M> {
    pub fn new(model: &'a M) -> Self {
        Self { model, cost: 0 }
    }
}

impl<M: ProblemModel + ?Sized> SwapEvaluator for FullRecompute<'_, M> {
    fn load(&mut self, values: &[u32]) -> Cost {
        self.cost = self.model.cost(values);
        self.cost
    }

    fn cost(&self) -> Cost {
        self.cost
    }

    fn cost_if_swapped(&mut self, values: &mut [u32], i: usize, j: usize) -> Cost {
        values.swap(i, j);
        let c = self.model.cost(values);
        values.swap(i, j);
        c
    }

    fn apply_swap(&mut self, values: &mut [u32], i: usize, j: usize) {
        values.swap(i, j);
        self.cost = self.model.cost(values);
    }

    fn variable_errors(&mut self, values: &[u32], errors: &mut [Cost]) {
        self.model.variable_errors(values, errors);
    }
}

/// True when `values` is a permutation of `base` (compared as multisets).
pub fn is_permutation_of(values: &[u32], base: &[u32]) -> bool {
    if values.len() != base.len() {
        return false;
    }
    let mut a = values.to_vec();
    let mut b = base.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}
