//! Watches every step of a search through an observer closure.

use adaptive_search::engine::{search, SearchControl, SearchState, StepKind};
use adaptive_search::problems::{MagicSquareProblem, ProblemKind};
use adaptive_search::{Configuration, Cost, ProblemModel};

fn main() {
    let model = MagicSquareProblem::new(5).unwrap();
    let params = ProblemKind::MagicSquare.tuned_params(model.size());
    let (mut moves, mut freezes, mut resets, mut restarts) = (0, 0, 0, 0);
    let mut costs = Vec::new();

    let mut observer = |kind: StepKind, _: &Configuration, cost: Cost, _: &SearchState| {
        match kind {
            StepKind::Moved { .. } => moves += 1,
            StepKind::Frozen { .. } => freezes += 1,
            StepKind::Reset => resets += 1,
            StepKind::Restart => restarts += 1,
        }
        costs.push(cost);
    };
    let outcome = search(
        &model,
        &params,
        &mut params.rng(),
        &SearchControl::default(),
        None,
        &mut observer,
    )
    .unwrap();

    println!("{:?}: {moves} moves, {freezes} freezes, {resets} resets, {restarts} descents", outcome.status);
    let shown: Vec<String> = costs.iter().take(40).map(Cost::to_string).collect();
    println!("first costs: {}", shown.join(" "));
}
