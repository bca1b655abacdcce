//! Plugs a new problem into the engine: n queens, one per row, with the
//! column of each row as a permutation so only diagonals can clash.

use adaptive_search::engine::solve_sequential;
use adaptive_search::model::FullRecompute;
use adaptive_search::model::SwapEvaluator;
use adaptive_search::{Cost, ProblemModel, SolverParams};

struct Queens {
    columns: Vec<u32>,
}

impl Queens {
    fn attacks(values: &[u32], i: usize) -> Cost {
        (0..values.len())
            .filter(|&j| j != i && values[i].abs_diff(values[j]) as usize == i.abs_diff(j))
            .count() as Cost
    }
}

impl ProblemModel for Queens {
    fn name(&self) -> String {
        format!("queens-{}", self.columns.len())
    }

    fn size(&self) -> usize {
        self.columns.len()
    }

    fn base_values(&self) -> &[u32] {
        &self.columns
    }

    fn cost(&self, values: &[u32]) -> Cost {
        (0..values.len()).map(|i| Self::attacks(values, i)).sum::<Cost>() / 2
    }

    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]) {
        for (i, e) in errors.iter_mut().enumerate() {
            *e = Self::attacks(values, i);
        }
    }

    fn validate(&self, values: &[u32]) -> bool {
        let n = values.len() as i64;
        let mut diag = std::collections::HashSet::new();
        let mut anti = std::collections::HashSet::new();
        values.iter().enumerate().all(|(r, &c)| {
            diag.insert(r as i64 - c as i64) && anti.insert(r as i64 + c as i64 - n)
        })
    }

    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
        Box::new(FullRecompute::new(self))
    }
}

fn main() {
    let n = 32;
    let model = Queens { columns: (0..n).collect() };
    let params = SolverParams::for_size(n as usize);
    let outcome = solve_sequential(&model, &params, &mut params.rng(), None).unwrap();
    println!("{:?}, cost {}, valid {}", outcome.status, outcome.cost, model.validate(outcome.config.values()));
    for &c in outcome.config.values() {
        let row: String = (0..n).map(|x| if x == c { 'Q' } else { '.' }).collect();
        println!("{row}");
    }
}
