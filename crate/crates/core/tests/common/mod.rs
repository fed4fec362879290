#![allow(dead_code)]

use std::path::PathBuf;

use jssp_aco::colony::{transition_probabilities, PheromoneMatrix};
use jssp_aco::harness::compute_stats;
use jssp_aco::instance::{Instance, Operation, Time};
use jssp_aco::{decode, run_colony, AcoParams, AntPath, IncMode, InitMode, OpId, SearchState};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 1000;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn instance_path(name: &str) -> PathBuf {
    repo_root().join("data/instances").join(format!("{name}.txt"))
}

/// Small job shop: every job visits each machine once, in a random order.
pub fn random_jssp(rng: &mut impl Rng, n_jobs: usize, n_machines: usize, durations: std::ops::RangeInclusive<Time>) -> Instance {
    let jobs = (0..n_jobs)
        .map(|_| {
            let mut machines: Vec<usize> = (0..n_machines).collect();
            machines.shuffle(rng);
            machines
                .into_iter()
                .map(|machine| Operation { machine, duration: rng.gen_range(durations.clone()) })
                .collect()
        })
        .collect();
    Instance::new("random", n_machines, jobs).unwrap()
}

/// Arbitrary small instances, including ragged jobs, repeated machines and
/// zero durations.
pub fn arb_instance() -> impl Strategy<Value = Instance> {
    arb_instance_sized(4, 4)
}

/// Small enough for the exhaustive oracle (at most 3 jobs of 4 operations).
pub fn arb_small_instance() -> impl Strategy<Value = Instance> {
    arb_instance_sized(3, 4)
}

fn arb_instance_sized(max_jobs: usize, max_ops: usize) -> impl Strategy<Value = Instance> {
    (1usize..=4).prop_flat_map(move |n_machines| {
        prop::collection::vec(prop::collection::vec((0..n_machines, 0 as Time..=9), 0..=max_ops), 1..=max_jobs)
            .prop_map(move |rows| {
                let jobs = rows
                    .into_iter()
                    .map(|row| row.into_iter().map(|(machine, duration)| Operation { machine, duration }).collect())
                    .collect();
                Instance::new("arb", n_machines, jobs).unwrap()
            })
    })
}

/// Instance together with a random feasible interleaving of it.
pub fn arb_interleaving() -> impl Strategy<Value = (Instance, Vec<OpId>)> {
    (arb_instance(), prop::collection::vec(any::<u16>(), 16)).prop_map(|(inst, picks)| {
        let mut state = SearchState::new(&inst);
        let mut i = 0;
        while !state.is_complete() {
            let cands = state.candidates();
            let op = cands[picks[i % picks.len()] as usize % cands.len()];
            state.advance(op).unwrap();
            i += 1;
        }
        let seq = state.into_path();
        (inst, seq)
    })
}

fn arb_params() -> impl Strategy<Value = AcoParams> {
    (0u64..1000, 1usize..4, any::<bool>(), 0usize..3, 0usize..2, 0.0f64..=1.0, 0.0f64..3.0, 0.0f64..3.0).prop_map(
        |(seed, n_ants, elitism, init, inc, evaporation, alpha, beta)| AcoParams {
            iterations: 4,
            n_ants,
            elitism,
            alpha,
            beta,
            evaporation,
            init_mode: InitMode::try_from(init as i64).unwrap(),
            inc_mode: IncMode::try_from(inc as i64).unwrap(),
            seed,
            ..AcoParams::default()
        },
    )
}

pub type PropResult = Result<(), TestError<String>>;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> PropResult
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Abort(r) => TestError::Abort(r),
        TestError::Fail(r, v) => TestError::Fail(r, format!("{v:?}")),
    })
}

pub fn prop_probability_normalization() -> PropResult {
    let strategy = (1usize..12).prop_flat_map(|n| {
        (
            prop::collection::vec(1.0f64..50.0, n),
            prop::collection::vec(1e-3f64..=1.0, n),
            0.0f64..4.0,
            0.0f64..4.0,
            0.01f64..100.0,
        )
    });
    run(strategy, |(taus, etas, alpha, beta, scale)| {
        let p = transition_probabilities(&taus, &etas, alpha, beta).unwrap();
        let total: f64 = p.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-9, "sum {}", total);
        prop_assert!(p.iter().all(|&x| x > 0.0 && x <= 1.0));
        // scaling a pheromone row leaves the distribution unchanged
        let scaled: Vec<f64> = taus.iter().map(|t| t * scale).collect();
        let q = transition_probabilities(&scaled, &etas, alpha, beta).unwrap();
        for (a, b) in p.iter().zip(&q) {
            prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", a, b);
        }
        // degenerate exponents give a uniform distribution
        let u = transition_probabilities(&taus, &etas, 0.0, 0.0).unwrap();
        let expect = 1.0 / taus.len() as f64;
        prop_assert!(u.iter().all(|&x| (x - expect).abs() <= 1e-12));
        Ok(())
    })
}

#[derive(Debug, Clone)]
enum PheromoneOp {
    Evaporate(f64),
    Uniform(Time, f64),
    Positional(Time, f64),
}

pub fn prop_pheromone_floor() -> PropResult {
    let op = prop_oneof![
        (0.0f64..=1.0).prop_map(PheromoneOp::Evaporate),
        (1 as Time..200, 0.1f64..5.0).prop_map(|(l, q)| PheromoneOp::Uniform(l, q)),
        (1 as Time..200, 0.1f64..5.0).prop_map(|(l, q)| PheromoneOp::Positional(l, q)),
    ];
    let strategy = (arb_interleaving(), 0.1f64..3.0, 0.0f64..3.0, prop::collection::vec(op, 1..20));
    run(strategy, |((inst, seq), floor, extra, ops)| {
        let mut m = PheromoneMatrix::new(inst.total_ops(), floor + extra, floor);
        for op in ops {
            match op {
                PheromoneOp::Evaporate(d) => m.evaporate(d),
                PheromoneOp::Uniform(l, q) => {
                    m.deposit_uniform(&[AntPath { sequence: seq.clone(), makespan: l }], q).unwrap()
                }
                PheromoneOp::Positional(l, q) => {
                    m.deposit_positional(&[AntPath { sequence: seq.clone(), makespan: l }], q).unwrap()
                }
            }
            if inst.total_ops() > 0 {
                prop_assert!(m.min() >= floor);
            }
        }
        Ok(())
    })
}

pub fn prop_path_feasibility() -> PropResult {
    run(arb_interleaving(), |(inst, seq)| {
        prop_assert_eq!(seq.len(), inst.total_ops());
        let mut seen = vec![false; inst.total_ops()];
        let mut next = vec![0usize; inst.n_jobs()];
        for op in &seq {
            prop_assert!(!seen[op.flat]);
            seen[op.flat] = true;
            prop_assert_eq!(op.step, next[op.job]);
            next[op.job] += 1;
        }
        Ok(())
    })
}

pub fn prop_search_state_invariants() -> PropResult {
    run(arb_interleaving(), |(inst, seq)| {
        let mut state = SearchState::new(&inst);
        for &op in &seq {
            let unfinished = (0..inst.n_jobs()).filter(|&j| state.next_step()[j] < inst.job_len(j)).count();
            prop_assert_eq!(state.candidates().len(), unfinished);
            let before = state.partial_makespan();
            let delta = state.delta_makespan(op).unwrap();
            state.advance(op).unwrap();
            prop_assert!(state.partial_makespan() >= before);
            prop_assert_eq!(state.partial_makespan() - before, delta);
        }
        prop_assert!(state.candidates().is_empty());
        Ok(())
    })
}

pub fn prop_decode_advance_agreement() -> PropResult {
    run(arb_interleaving(), |(inst, seq)| {
        let mut state = SearchState::new(&inst);
        for &op in &seq {
            state.advance(op).unwrap();
        }
        let schedule = decode(&inst, &seq).unwrap();
        prop_assert_eq!(schedule.makespan(), state.partial_makespan());
        for op in inst.ops() {
            prop_assert_eq!(Some(schedule.start(op)), state.op_start(op));
        }
        Ok(())
    })
}

pub fn prop_validate_decode() -> PropResult {
    run(arb_interleaving(), |(inst, seq)| {
        let schedule = decode(&inst, &seq).unwrap();
        prop_assert_eq!(schedule.validate(), Ok(()));
        Ok(())
    })
}

pub fn prop_run_stats_consistency() -> PropResult {
    run(prop::collection::vec(0 as Time..5000, 1..40), |values| {
        let s = compute_stats(&values).unwrap();
        let again = compute_stats(&s.per_execution).unwrap();
        prop_assert_eq!(&again, &s);
        prop_assert!(f64::from(s.minimum) <= s.average && s.average <= f64::from(s.maximum));
        prop_assert!(s.std >= 0.0 && s.sup_std >= 0.0 && s.inf_std >= 0.0);
        let range = f64::from(s.maximum - s.minimum);
        prop_assert!(s.sup_std.max(s.inf_std) <= range + 1e-9);
        Ok(())
    })
}

pub fn prop_seed_determinism() -> PropResult {
    run((arb_instance(), arb_params()), |(inst, params)| {
        let a = run_colony(&inst, &params).unwrap();
        let b = run_colony(&inst, &params).unwrap();
        prop_assert_eq!(&a, &b);
        // reported makespan matches the decoder, and the schedule is valid
        let schedule = decode(&inst, &a.best_path.sequence).unwrap();
        prop_assert_eq!(schedule.makespan(), a.best_path.makespan);
        prop_assert_eq!(schedule.validate(), Ok(()));
        prop_assert!(a.best_makespan_per_iteration.windows(2).all(|w| w[1] <= w[0]));
        Ok(())
    })
}

/// Fixed-seed generator for acceptance instances.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
