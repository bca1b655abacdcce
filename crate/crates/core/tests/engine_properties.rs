mod common;

use std::sync::atomic::AtomicBool;

use adaptive_search::engine::{
    evaluate_moves, random_permutation, search, solve_sequential, MoveEvaluation, SearchControl,
    SearchState, StepKind,
};
use adaptive_search::model::{is_permutation_of, FullRecompute, SwapEvaluator};
use adaptive_search::problems::{
    AllIntervalProblem, MagicSquareProblem, PartitionProblem, PerfectSquareProblem,
};
use adaptive_search::rng::worker_rng;
use adaptive_search::{Configuration, Cost, ProblemModel, SolverParams, Status};
use proptest::prelude::*;

fn model_for(choice: u8) -> Box<dyn ProblemModel> {
    match choice % 6 {
        0 => Box::new(MagicSquareProblem::new(3).unwrap()),
        1 => Box::new(MagicSquareProblem::new(4).unwrap()),
        2 => Box::new(PartitionProblem::new(16).unwrap()),
        3 => Box::new(AllIntervalProblem::new(9).unwrap()),
        4 => Box::new(AllIntervalProblem::new(14).unwrap()),
        _ => Box::new(PerfectSquareProblem::new(4, vec![2, 2, 2, 1, 1, 1, 1]).unwrap()),
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Step {
    kind: StepKind,
    config: Configuration,
    cost: Cost,
    iteration: u64,
    restart: u64,
    tabu_until: Vec<u64>,
    tabu_count: usize,
    best_cost: Cost,
    best_config: Configuration,
}

fn trace(
    model: &dyn ProblemModel,
    params: &SolverParams,
    seed: u64,
) -> (adaptive_search::Outcome, Vec<Step>) {
    let mut steps = Vec::new();
    let mut obs = |kind: StepKind, config: &Configuration, cost: Cost, s: &SearchState| {
        steps.push(Step {
            kind,
            config: config.clone(),
            cost,
            iteration: s.iteration,
            restart: s.restart,
            tabu_until: s.tabu_until.clone(),
            tabu_count: s.tabu_count,
            best_cost: s.best_cost,
            best_config: s.best_config.clone(),
        })
    };
    let outcome = search(
        model,
        params,
        &mut worker_rng(seed, 0),
        &SearchControl::default(),
        None,
        &mut obs,
    )
    .unwrap();
    (outcome, steps)
}

fn params_strategy() -> impl Strategy<Value = SolverParams> {
    (1u64..12, 1usize..6, 0.05f64..1.0, 1u64..150, 0u64..3, prop_oneof![Just(0.0), 0.0f64..1.0])
        .prop_map(|(t, rl, rp, mi, mr, pp)| SolverParams {
            tabu_tenure: t,
            reset_limit: rl,
            reset_percentage: rp,
            max_iterations: mi,
            max_restarts: mr,
            rng_seed: 0,
            plateau_probability: pp,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn trajectory_invariants(choice in 0u8..6, params in params_strategy(), seed in any::<u64>()) {
        let model = model_for(choice);
        let base = model.base_values().to_vec();
        let (outcome, steps) = trace(model.as_ref(), &params, seed);
        prop_assert!(!steps.is_empty());

        let initial_cost = steps[0].cost;
        let mut prev_best = Cost::MAX;
        let mut expected_count = 0usize;
        let mut prev_tabu: Vec<u64> = vec![0; base.len()];

        for s in &steps {
            // permutation preservation and no evaluator drift
            prop_assert!(is_permutation_of(s.config.values(), &base));
            prop_assert_eq!(s.cost, model.cost(s.config.values()));

            // monotone global best, consistent with its configuration
            prop_assert!(s.best_cost <= prev_best);
            prop_assert_eq!(s.best_cost, model.cost(s.best_config.values()));
            prop_assert!(s.best_cost <= s.cost);
            prev_best = s.best_cost;

            match s.kind {
                StepKind::Restart => {
                    prop_assert_eq!(s.iteration, 0);
                    prop_assert!(s.tabu_until.iter().all(|&t| t == 0));
                    expected_count = 0;
                }
                StepKind::Moved { culprit, partner } => {
                    prop_assert_ne!(culprit, partner);
                    prop_assert!(prev_tabu[culprit] <= s.iteration, "moved a tabu culprit");
                    prop_assert!(s.iteration <= params.max_iterations);
                }
                StepKind::Frozen { culprit } => {
                    prop_assert!(prev_tabu[culprit] <= s.iteration, "froze a tabu culprit");
                    prop_assert_eq!(s.tabu_until[culprit], s.iteration + params.tabu_tenure);
                    expected_count += 1;
                }
                StepKind::Reset => expected_count = 0,
            }
            // the counter holds the freezes since the last reset or restart;
            // it exceeds the limit only on the freeze that triggers a reset
            prop_assert_eq!(s.tabu_count, expected_count);
            prop_assert!(s.tabu_count <= params.reset_limit + 1);
            prev_tabu.clone_from(&s.tabu_until);
        }

        prop_assert!(outcome.cost <= initial_cost);
        prop_assert_eq!(outcome.cost, model.cost(outcome.config.values()));
        prop_assert_eq!(outcome.config.values(), steps.last().unwrap().best_config.values());
        prop_assert!(outcome.restarts_used <= params.max_restarts);
        prop_assert!(outcome.iterations_total <= params.max_iterations * (params.max_restarts + 1));
        match outcome.status {
            Status::Solved => {
                prop_assert_eq!(outcome.cost, 0);
                prop_assert!(model.validate(outcome.config.values()));
            }
            Status::Exhausted => prop_assert_eq!(outcome.restarts_used, params.max_restarts),
            Status::Interrupted => prop_assert!(false, "no stop condition was given"),
        }
    }

    #[test]
    fn same_seed_same_trajectory(choice in 0u8..6, params in params_strategy(), seed in any::<u64>()) {
        let model = model_for(choice);
        let (a, ta) = trace(model.as_ref(), &params, seed);
        let (b, tb) = trace(model.as_ref(), &params, seed);
        prop_assert_eq!(a, b);
        prop_assert_eq!(ta, tb);
    }

    /// The chosen swap's cost is the minimum over an exhaustive scan of every
    /// swap with the culprit, recomputed from scratch.
    #[test]
    fn move_choice_matches_brute_force(choice in 0u8..4, seed in any::<u64>(), culprit_pick in any::<usize>()) {
        let model: Box<dyn ProblemModel> = match choice {
            0 => Box::new(PartitionProblem::new(8).unwrap()),
            1 => Box::new(AllIntervalProblem::new(8).unwrap()),
            2 => Box::new(MagicSquareProblem::new(2).unwrap()),
            _ => Box::new(PerfectSquareProblem::new(4, vec![2, 2, 2, 1, 1, 1, 1]).unwrap()),
        };
        let mut rng = worker_rng(seed, 0);
        let config = random_permutation(model.base_values(), &mut rng);
        let n = model.size();
        let culprit = culprit_pick % n;
        let current = model.cost(config.values());
        // partition moves exchange values across the two halves only
        let candidates: Vec<usize> = if choice == 0 {
            (0..n).filter(|&j| (j < n / 2) != (culprit < n / 2)).collect()
        } else {
            (0..n).filter(|&j| j != culprit).collect()
        };
        let brute_min = candidates
            .iter()
            .copied()
            .map(|j| {
                let mut v = config.values().to_vec();
                v.swap(culprit, j);
                model.cost(&v)
            })
            .min()
            .unwrap();
        match evaluate_moves(model.as_ref(), &config, culprit, &mut rng) {
            MoveEvaluation::Improving(m) => {
                prop_assert!(brute_min < current);
                prop_assert_eq!(m.cost, brute_min);
                prop_assert_eq!(m.culprit, culprit);
                let mut v = config.values().to_vec();
                v.swap(culprit, m.partner);
                prop_assert_eq!(model.cost(&v), m.cost);
            }
            MoveEvaluation::NoImprovingMove { best } => {
                prop_assert!(brute_min >= current);
                prop_assert_eq!(best.unwrap().cost, brute_min);
            }
        }
    }

    /// Incremental swap costs agree with recomputation over random swap walks.
    #[test]
    fn incremental_costs_match_full(choice in 0u8..6, seed in any::<u64>(), swaps in prop::collection::vec((any::<usize>(), any::<usize>()), 1..60)) {
        let model = model_for(choice);
        let n = model.size();
        let mut values = random_permutation(model.base_values(), &mut worker_rng(seed, 0)).into_inner();
        let mut eval = model.evaluator();
        let mut full = FullRecompute::new(model.as_ref());
        prop_assert_eq!(eval.load(&values), full.load(&values));
        let mut e1 = vec![0; n];
        let mut e2 = vec![0; n];
        for (a, b) in swaps {
            let (i, j) = (a % n, b % n);
            if i == j {
                continue;
            }
            prop_assert_eq!(eval.cost_if_swapped(&mut values, i, j), full.cost_if_swapped(&mut values, i, j));
            eval.apply_swap(&mut values, i, j);
            prop_assert_eq!(eval.cost(), model.cost(&values));
            eval.variable_errors(&values, &mut e1);
            model.variable_errors(&values, &mut e2);
            prop_assert_eq!(&e1, &e2);
        }
    }
}

#[test]
fn single_candidate_toy_swap() {
    // two variables; cost is zero once value 2 sits in front
    struct Toy;
    impl ProblemModel for Toy {
        fn name(&self) -> String {
            "toy".into()
        }
        fn size(&self) -> usize {
            2
        }
        fn base_values(&self) -> &[u32] {
            &[1, 2]
        }
        fn cost(&self, v: &[u32]) -> Cost {
            v[0].abs_diff(2) as Cost
        }
        fn variable_errors(&self, v: &[u32], e: &mut [Cost]) {
            e.fill(self.cost(v));
        }
        fn validate(&self, v: &[u32]) -> bool {
            v == [2, 1]
        }
        fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
            Box::new(FullRecompute::new(self))
        }
    }
    let got = evaluate_moves(&Toy, &Configuration::new(vec![1, 2]), 0, &mut worker_rng(0, 0));
    match got {
        MoveEvaluation::Improving(m) => assert_eq!((m.partner, m.cost), (1, 0)),
        other => panic!("expected the repairing swap, got {other:?}"),
    }
}

#[test]
fn magic_three_repair_swap() {
    let solution = [2, 7, 6, 9, 5, 1, 4, 3, 8];
    assert!(common::is_magic(&solution, 3));
    let model = MagicSquareProblem::new(3).unwrap();
    // every single transposition of the classical square is repaired by
    // swapping back from either cell
    for i in 0..9 {
        for j in i + 1..9 {
            let mut broken = solution.to_vec();
            broken.swap(i, j);
            let config = Configuration::new(broken);
            for (culprit, other) in [(i, j), (j, i)] {
                match evaluate_moves(&model, &config, culprit, &mut worker_rng(5, 0)) {
                    MoveEvaluation::Improving(m) => {
                        assert_eq!(m.cost, 0);
                        let mut v = config.values().to_vec();
                        v.swap(culprit, m.partner);
                        assert!(common::is_magic(&v, 3), "swap {culprit}<->{} vs {other}", m.partner);
                    }
                    other => panic!("no repair found: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn strict_local_minimum_has_no_improving_move() {
    // find a 3x3 board where every swap strictly raises the line error, by
    // exhaustive scan, then check every culprit
    let model = MagicSquareProblem::new(3).unwrap();
    let base: Vec<u32> = (1..=9).collect();
    let swaps_raise = |v: &[u32]| {
        let c = common::magic_line_error(v, 3);
        c > 0
            && (0..9).all(|i| {
                (i + 1..9).all(|j| {
                    let mut w = v.to_vec();
                    w.swap(i, j);
                    common::magic_line_error(&w, 3) > c
                })
            })
    };
    let local_min = common::permutations(&base)
        .into_iter()
        .find(|v| swaps_raise(v))
        .expect("3x3 boards have strict local minima");
    let config = Configuration::new(local_min);
    for culprit in 0..9 {
        let got = evaluate_moves(&model, &config, culprit, &mut worker_rng(9, 0));
        match got {
            MoveEvaluation::NoImprovingMove { best: Some(m) } => {
                assert!(m.cost > model.cost(config.values()))
            }
            other => panic!("expected NoImprovingMove, got {other:?}"),
        }
    }
}

#[test]
fn magic_one_is_solved_at_iteration_zero() {
    let model = MagicSquareProblem::new(1).unwrap();
    let params = SolverParams::for_size(1);
    let o = solve_sequential(&model, &params, &mut worker_rng(1, 0), None).unwrap();
    assert_eq!(o.status, Status::Solved);
    assert_eq!(o.iterations_total, 0);
    assert_eq!(o.config.values(), &[1]);
}

#[test]
fn tiny_budget_exhausts() {
    let model = MagicSquareProblem::new(10).unwrap();
    let params = SolverParams { max_iterations: 1, max_restarts: 0, ..SolverParams::for_size(100) };
    let o = solve_sequential(&model, &params, &mut worker_rng(3, 0), None).unwrap();
    assert_eq!(o.status, Status::Exhausted);
    assert!(o.cost > 0);
    assert!(o.iterations_total <= 1);
}

#[test]
fn partition_eight_paper_sums() {
    let model = PartitionProblem::new(8).unwrap();
    let params = SolverParams::for_size(8);
    let o = solve_sequential(&model, &params, &mut worker_rng(8, 0), None).unwrap();
    assert_eq!(o.status, Status::Solved);
    let a = &o.config.values()[..4];
    let b = &o.config.values()[4..];
    assert_eq!(a.iter().sum::<u32>(), 18);
    assert_eq!(b.iter().sum::<u32>(), 18);
    assert_eq!(a.iter().map(|v| v * v).sum::<u32>(), 102);
    assert_eq!(b.iter().map(|v| v * v).sum::<u32>(), 102);
}

#[test]
fn invalid_params_rejected_before_search() {
    let model = MagicSquareProblem::new(3).unwrap();
    let params = SolverParams { reset_percentage: 0.0, ..SolverParams::for_size(9) };
    assert!(solve_sequential(&model, &params, &mut worker_rng(0, 0), None).is_err());
}

#[test]
fn raised_stop_flag_returns_initial_configuration() {
    let model = MagicSquareProblem::new(6).unwrap();
    let stop = AtomicBool::new(true);
    let init = random_permutation(model.base_values(), &mut worker_rng(4, 4));
    let o = search(
        &model,
        &SolverParams::for_size(36),
        &mut worker_rng(4, 0),
        &SearchControl { stop: Some(&stop), deadline: None },
        Some(&init),
        &mut (),
    )
    .unwrap();
    assert_eq!(o.status, Status::Interrupted);
    assert_eq!(o.config, init);
    assert_eq!(o.iterations_total, 0);
}
