//! Elitist ant colony over the complete operation graph.
//!
//! Every iteration each ant builds a full interleaving of the operations.
//! From vertex `i` the next frontier operation `j` is drawn with probability
//! proportional to `tau[i][j]^alpha * eta_j^beta`, where `eta_j = 1 / (1 + dm)`
//! and `dm` is the growth of the partial makespan caused by placing `j`.
//! Ants read a frozen pheromone matrix; once all of them finish, the matrix
//! evaporates and the iteration's paths deposit pheromone. With elitism on, the
//! global-best path deposits once more.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Instance, OpId, Time};
use crate::search::SearchState;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("iterations must be positive")]
    ZeroIterations,
    #[error("number of ants must be positive")]
    ZeroAnts,
    #[error("evaporation rate {0} outside [0, 1]")]
    Evaporation(f64),
    #[error("alpha must be a non-negative number, got {0}")]
    Alpha(f64),
    #[error("beta must be a non-negative number, got {0}")]
    Beta(f64),
    #[error("q must be positive, got {0}")]
    Q(f64),
    #[error("pheromone floor {floor} must be positive and not exceed the initial value {init}")]
    Pheromone { init: f64, floor: f64 },
    #[error("unknown init mode {0} (expected 0, 1 or 2)")]
    InitMode(i64),
    #[error("unknown inc mode {0} (expected 0 or 1)")]
    IncMode(i64),
}

#[derive(Debug, Error, PartialEq)]
pub enum ColonyError {
    #[error("no candidate transitions")]
    NoCandidates,
    #[error("pheromone row has {tau} entries but {eta} heuristic values were given")]
    LengthMismatch { tau: usize, eta: usize },
    #[error("transition weights sum to {0}")]
    DegenerateWeights(f64),
    #[error("ant path has zero makespan")]
    ZeroMakespan,
}

/// How each ant picks its first vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitMode {
    /// Uniform over job heads, redrawn every iteration.
    #[default]
    Random = 0,
    /// Uniform over job heads at the first iteration, then kept.
    RandomThenFixed = 1,
    /// One ant per job, starting at that job's first operation. Overrides the ant count.
    OnePerJob = 2,
}

impl TryFrom<i64> for InitMode {
    type Error = ParamError;
    fn try_from(v: i64) -> Result<Self, ParamError> {
        match v {
            0 => Ok(InitMode::Random),
            1 => Ok(InitMode::RandomThenFixed),
            2 => Ok(InitMode::OnePerJob),
            other => Err(ParamError::InitMode(other)),
        }
    }
}

/// Pheromone deposit policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IncMode {
    /// Every arc of ant `k` receives `Q / L_k`.
    #[default]
    Uniform = 0,
    /// Arc `i` of a path with `|P|` vertices receives `(Q / L_k)^(|P| - 1 - i)`.
    Positional = 1,
}

impl TryFrom<i64> for IncMode {
    type Error = ParamError;
    fn try_from(v: i64) -> Result<Self, ParamError> {
        match v {
            0 => Ok(IncMode::Uniform),
            1 => Ok(IncMode::Positional),
            other => Err(ParamError::IncMode(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    pub iterations: usize,
    pub n_ants: usize,
    pub elitism: bool,
    pub alpha: f64,
    pub beta: f64,
    pub evaporation: f64,
    pub q: f64,
    pub init_mode: InitMode,
    pub inc_mode: IncMode,
    pub pheromone_init: f64,
    pub pheromone_floor: f64,
    pub seed: u64,
}

impl Default for AcoParams {
    /// The baseline parameter row: 1000 iterations, 100 ants, no elitism,
    /// alpha = beta = 1, evaporation 0.1, Q = 1, random start, uniform deposit,
    /// pheromone starting at and floored to 1.
    fn default() -> Self {
        Self {
            iterations: 1000,
            n_ants: 100,
            elitism: false,
            alpha: 1.0,
            beta: 1.0,
            evaporation: 0.1,
            q: 1.0,
            init_mode: InitMode::Random,
            inc_mode: IncMode::Uniform,
            pheromone_init: 1.0,
            pheromone_floor: 1.0,
            seed: 0,
        }
    }
}

impl AcoParams {
    /// Tuned configuration: elitism, beta 2, evaporation 0.01, one ant per job,
    /// positional deposit.
    pub fn tuned() -> Self {
        Self {
            elitism: true,
            beta: 2.0,
            evaporation: 0.01,
            init_mode: InitMode::OnePerJob,
            inc_mode: IncMode::Positional,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.iterations == 0 {
            return Err(ParamError::ZeroIterations);
        }
        if self.n_ants == 0 && self.init_mode != InitMode::OnePerJob {
            return Err(ParamError::ZeroAnts);
        }
        if !(0.0..=1.0).contains(&self.evaporation) {
            return Err(ParamError::Evaporation(self.evaporation));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(ParamError::Alpha(self.alpha));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(ParamError::Beta(self.beta));
        }
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(ParamError::Q(self.q));
        }
        let (init, floor) = (self.pheromone_init, self.pheromone_floor);
        if !(floor > 0.0 && floor <= init && init.is_finite()) {
            return Err(ParamError::Pheromone { init, floor });
        }
        Ok(())
    }

    /// Ants per iteration after the init-mode override.
    pub fn effective_ants(&self, inst: &Instance) -> usize {
        match self.init_mode {
            InitMode::OnePerJob => inst.n_jobs(),
            _ => self.n_ants,
        }
    }
}

/// Dense `|V| x |V|` trail intensities, never below `floor`.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    n: usize,
    tau: Vec<f64>,
    floor: f64,
}

impl PheromoneMatrix {
    pub fn new(n: usize, init: f64, floor: f64) -> Self {
        assert!(floor > 0.0 && init >= floor, "pheromone init {init} below floor {floor}");
        Self { n, tau: vec![init; n * n], floor }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.tau[from * self.n + to]
    }

    pub fn set(&mut self, from: usize, to: usize, value: f64) {
        self.tau[from * self.n + to] = value.max(self.floor);
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.tau[from * self.n..(from + 1) * self.n]
    }

    pub fn min(&self) -> f64 {
        self.tau.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.tau.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `tau <- max(floor, (1 - d) * tau)` on every entry.
    pub fn evaporate(&mut self, d: f64) {
        let keep = 1.0 - d;
        let floor = self.floor;
        for t in &mut self.tau {
            *t = (keep * *t).max(floor);
        }
    }

    /// Adds `Q / L_k` to each arc traversed by ant `k`.
    pub fn deposit_uniform(&mut self, paths: &[AntPath], q: f64) -> Result<(), ColonyError> {
        for path in paths {
            let amount = q / nonzero(path.makespan)?;
            for arc in path.sequence.windows(2) {
                self.tau[arc[0].flat * self.n + arc[1].flat] += amount;
            }
        }
        Ok(())
    }

    /// Adds `(Q / L_k)^(|P| - 1 - i)` to the arc at 0-based position `i`, so
    /// the final arc gets exponent 1.
    pub fn deposit_positional(&mut self, paths: &[AntPath], q: f64) -> Result<(), ColonyError> {
        for path in paths {
            let base = q / nonzero(path.makespan)?;
            let n_vertices = path.sequence.len();
            for (i, arc) in path.sequence.windows(2).enumerate() {
                let exponent = (n_vertices - 1 - i) as i32;
                self.tau[arc[0].flat * self.n + arc[1].flat] += base.powi(exponent);
            }
        }
        Ok(())
    }

    pub fn deposit(&mut self, mode: IncMode, paths: &[AntPath], q: f64) -> Result<(), ColonyError> {
        match mode {
            IncMode::Uniform => self.deposit_uniform(paths, q),
            IncMode::Positional => self.deposit_positional(paths, q),
        }
    }
}

fn nonzero(makespan: Time) -> Result<f64, ColonyError> {
    if makespan == 0 {
        Err(ColonyError::ZeroMakespan)
    } else {
        Ok(f64::from(makespan))
    }
}

#[inline]
fn pow(x: f64, e: f64) -> f64 {
    if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

/// `p_j = tau_j^alpha * eta_j^beta / sum_l tau_l^alpha * eta_l^beta`.
pub fn transition_probabilities(
    tau_row: &[f64],
    etas: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<Vec<f64>, ColonyError> {
    let mut out = Vec::with_capacity(etas.len());
    probabilities_into(tau_row, etas, alpha, beta, &mut out)?;
    Ok(out)
}

fn probabilities_into(
    tau_row: &[f64],
    etas: &[f64],
    alpha: f64,
    beta: f64,
    out: &mut Vec<f64>,
) -> Result<(), ColonyError> {
    if tau_row.len() != etas.len() {
        return Err(ColonyError::LengthMismatch { tau: tau_row.len(), eta: etas.len() });
    }
    if etas.is_empty() {
        return Err(ColonyError::NoCandidates);
    }
    out.clear();
    out.extend(tau_row.iter().zip(etas).map(|(&t, &e)| pow(t, alpha) * pow(e, beta)));
    let total: f64 = out.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(ColonyError::DegenerateWeights(total));
    }
    for p in out.iter_mut() {
        *p /= total;
    }
    Ok(())
}

/// Roulette-wheel draw.
pub fn select_next<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    select_with_draw(probabilities, rng.gen::<f64>())
}

/// Roulette wheel for a given uniform draw in `[0, 1)`: the first index whose
/// cumulative probability exceeds `u`. The last bucket absorbs rounding residue.
pub fn select_with_draw(probabilities: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    for (i, &p) in probabilities.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return i;
        }
    }
    probabilities.len().saturating_sub(1)
}

/// A complete interleaving with its makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntPath {
    pub sequence: Vec<OpId>,
    pub makespan: Time,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonyResult {
    pub best_path: AntPath,
    /// Global best after each iteration.
    pub best_makespan_per_iteration: Vec<Time>,
    /// Best path of each iteration on its own.
    pub iteration_best_makespan: Vec<Time>,
}

/// Scratch buffers reused across constructions.
#[derive(Default)]
struct Scratch {
    candidates: Vec<OpId>,
    taus: Vec<f64>,
    etas: Vec<f64>,
    probs: Vec<f64>,
}

fn construct_path<R: Rng>(
    inst: &Instance,
    pheromone: &PheromoneMatrix,
    params: &AcoParams,
    first: OpId,
    rng: &mut R,
    scratch: &mut Scratch,
) -> AntPath {
    let mut state = SearchState::new(inst);
    state.advance(first).expect("first vertex is a job head");
    while !state.is_complete() {
        state.candidates_into(&mut scratch.candidates);
        let row = pheromone.row(state.last().expect("path is non-empty").flat);
        scratch.taus.clear();
        scratch.etas.clear();
        for &c in &scratch.candidates {
            scratch.taus.push(row[c.flat]);
            scratch.etas.push(state.frontier_heuristic(c));
        }
        probabilities_into(&scratch.taus, &scratch.etas, params.alpha, params.beta, &mut scratch.probs)
            .expect("pheromone >= floor > 0 and eta > 0");
        let pick = scratch.candidates[select_next(&scratch.probs, rng)];
        state.advance(pick).expect("pick comes from the frontier");
    }
    let makespan = state.partial_makespan();
    AntPath { sequence: state.into_path(), makespan }
}

fn job_heads(inst: &Instance) -> Vec<OpId> {
    (0..inst.n_jobs()).filter(|&j| inst.job_len(j) > 0).map(|j| inst.op(j, 0)).collect()
}

/// Independent RNG stream for ant `k`; stream 0 is never handed out.
fn ant_rng(seed: u64, ant: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ant as u64 + 1);
    rng
}

/// Runs the colony for `params.iterations` rounds and returns the global best.
///
/// Identical `(inst, params)` always give an identical result.
pub fn run_colony(inst: &Instance, params: &AcoParams) -> Result<ColonyResult, ParamError> {
    run_colony_with(inst, params, |_, _| {})
}

/// Like [`run_colony`], calling `observe(iteration, global_best)` after every round.
pub fn run_colony_with<F>(inst: &Instance, params: &AcoParams, mut observe: F) -> Result<ColonyResult, ParamError>
where
    F: FnMut(usize, &AntPath),
{
    params.validate()?;
    let heads = job_heads(inst);
    if heads.is_empty() {
        let empty = AntPath { sequence: Vec::new(), makespan: 0 };
        return Ok(ColonyResult {
            best_path: empty,
            best_makespan_per_iteration: vec![0; params.iterations],
            iteration_best_makespan: vec![0; params.iterations],
        });
    }

    let n_ants = params.effective_ants(inst);
    let mut rngs: Vec<ChaCha8Rng> = (0..n_ants).map(|k| ant_rng(params.seed, k)).collect();
    let mut pheromone = PheromoneMatrix::new(inst.total_ops(), params.pheromone_init, params.pheromone_floor);
    let mut scratch = Scratch::default();

    let mut fixed_starts: Option<Vec<OpId>> = match params.init_mode {
        // an ant per job; jobs without operations get a random head instead
        InitMode::OnePerJob => Some(
            (0..n_ants)
                .map(|k| {
                    if inst.job_len(k) > 0 {
                        inst.op(k, 0)
                    } else {
                        heads[rngs[k].gen_range(0..heads.len())]
                    }
                })
                .collect(),
        ),
        _ => None,
    };

    let mut best: Option<AntPath> = None;
    let mut trace = Vec::with_capacity(params.iterations);
    let mut iteration_trace = Vec::with_capacity(params.iterations);
    let mut paths: Vec<AntPath> = Vec::with_capacity(n_ants);

    for iteration in 0..params.iterations {
        let starts: Vec<OpId> = match (&fixed_starts, params.init_mode) {
            (Some(s), _) => s.clone(),
            (None, mode) => {
                let drawn: Vec<OpId> =
                    rngs.iter_mut().map(|rng| heads[rng.gen_range(0..heads.len())]).collect();
                if mode == InitMode::RandomThenFixed {
                    fixed_starts = Some(drawn.clone());
                }
                drawn
            }
        };

        paths.clear();
        for (rng, &first) in rngs.iter_mut().zip(&starts) {
            paths.push(construct_path(inst, &pheromone, params, first, rng, &mut scratch));
        }

        let round_best = paths.iter().min_by_key(|p| p.makespan).expect("at least one ant");
        iteration_trace.push(round_best.makespan);
        if best.as_ref().is_none_or(|b| round_best.makespan < b.makespan) {
            best = Some(round_best.clone());
        }
        let incumbent = best.as_ref().expect("set above");

        pheromone.evaporate(params.evaporation);
        // all-zero durations give L = 0; nothing to learn
        if incumbent.makespan > 0 {
            pheromone.deposit(params.inc_mode, &paths, params.q).expect("makespans are positive");
            if params.elitism {
                pheromone
                    .deposit(params.inc_mode, std::slice::from_ref(incumbent), params.q)
                    .expect("makespan is positive");
            }
        }
        trace.push(incumbent.makespan);
        observe(iteration, incumbent);
    }

    Ok(ColonyResult {
        best_path: best.expect("iterations > 0"),
        best_makespan_per_iteration: trace,
        iteration_best_makespan: iteration_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::toy;
    use crate::schedule::decode;

    fn assert_close(a: f64, b: f64) {
        assert!((a - b).abs() <= 1e-12, "{a} != {b}");
    }

    #[test]
    fn probabilities_examples() {
        assert_eq!(transition_probabilities(&[3.7], &[0.2], 1.3, 2.0).unwrap(), vec![1.0]);
        assert_eq!(transition_probabilities(&[1.0, 1.0], &[1.0, 1.0], 2.0, 5.0).unwrap(), vec![0.5, 0.5]);
        let p = transition_probabilities(&[1.0, 1.0], &[1.0, 0.25], 1.0, 2.0).unwrap();
        assert_close(p[0], 16.0 / 17.0);
        assert_close(p[1], 1.0 / 17.0);
    }

    #[test]
    fn probabilities_errors() {
        assert_eq!(transition_probabilities(&[], &[], 1.0, 1.0), Err(ColonyError::NoCandidates));
        assert!(matches!(
            transition_probabilities(&[1.0], &[1.0, 1.0], 1.0, 1.0),
            Err(ColonyError::LengthMismatch { .. })
        ));
        assert!(matches!(
            transition_probabilities(&[0.0], &[1.0], 1.0, 1.0),
            Err(ColonyError::DegenerateWeights(_))
        ));
    }

    #[test]
    fn roulette_thresholds() {
        assert_eq!(select_with_draw(&[1.0], 0.999), 0);
        assert_eq!(select_with_draw(&[0.5, 0.5], 0.25), 0);
        assert_eq!(select_with_draw(&[0.5, 0.5], 0.75), 1);
        // rounding residue lands in the last bucket
        assert_eq!(select_with_draw(&[0.3, 0.3, 0.3], 0.95), 2);
    }

    #[test]
    fn roulette_frequency_matches_probability() {
        let probs = [16.0 / 17.0, 1.0 / 17.0];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let hits = (0..100_000).filter(|_| select_next(&probs, &mut rng) == 0).count();
        let freq = hits as f64 / 100_000.0;
        assert!((freq - 0.94).abs() <= 0.01, "frequency {freq}");
    }

    #[test]
    fn evaporation_examples() {
        let mut m = PheromoneMatrix::new(2, 2.0, 1.0);
        m.evaporate(0.1);
        assert_close(m.get(0, 1), 1.8);

        let mut m = PheromoneMatrix::new(2, 1.0, 1.0);
        m.evaporate(0.5);
        assert_eq!(m.get(1, 0), 1.0);

        let mut m = PheromoneMatrix::new(2, 3.0, 1.0);
        let before = m.clone();
        m.evaporate(0.0);
        assert_eq!(m, before);
    }

    fn path(inst: &Instance, pairs: &[(usize, usize)], makespan: Time) -> AntPath {
        AntPath { sequence: pairs.iter().map(|&(j, s)| inst.op(j, s)).collect(), makespan }
    }

    #[test]
    fn uniform_deposit_examples() {
        let inst = toy();
        let a = path(&inst, &[(0, 0), (1, 0), (1, 1), (0, 1)], 55);
        let mut m = PheromoneMatrix::new(4, 1.0, 1.0);
        m.deposit_uniform(std::slice::from_ref(&a), 1.0).unwrap();
        assert_close(m.get(0, 2), 1.0 + 1.0 / 55.0);
        // J0.0 -> J0.1 not traversed
        assert_eq!(m.get(0, 1), 1.0);

        let b = AntPath { makespan: 10, ..a.clone() };
        let c = AntPath { makespan: 20, ..a };
        let mut m = PheromoneMatrix::new(4, 1.0, 1.0);
        m.deposit_uniform(&[b, c], 1.0).unwrap();
        assert_close(m.get(0, 2), 1.15);
    }

    #[test]
    fn positional_deposit_examples() {
        let inst = toy();
        let a = path(&inst, &[(0, 0), (1, 0), (1, 1), (0, 1)], 2);
        let mut m = PheromoneMatrix::new(4, 1.0, 1.0);
        m.deposit_positional(std::slice::from_ref(&a), 1.0).unwrap();
        // arcs 0->2, 2->3, 3->1 get 0.5^3, 0.5^2, 0.5^1
        assert_close(m.get(0, 2), 1.125);
        assert_close(m.get(2, 3), 1.25);
        assert_close(m.get(3, 1), 1.5);

        // Q / L = 1 matches the uniform rule
        let a = AntPath { makespan: 3, ..a };
        let mut pos = PheromoneMatrix::new(4, 1.0, 1.0);
        let mut uni = PheromoneMatrix::new(4, 1.0, 1.0);
        pos.deposit_positional(std::slice::from_ref(&a), 3.0).unwrap();
        uni.deposit_uniform(std::slice::from_ref(&a), 3.0).unwrap();
        assert_eq!(pos, uni);
    }

    #[test]
    fn zero_makespan_is_rejected() {
        let inst = toy();
        let mut m = PheromoneMatrix::new(4, 1.0, 1.0);
        let a = path(&inst, &[(0, 0), (1, 0)], 0);
        assert_eq!(m.deposit_uniform(&[a], 1.0), Err(ColonyError::ZeroMakespan));
    }

    #[test]
    fn param_validation() {
        assert_eq!(AcoParams { iterations: 0, ..Default::default() }.validate(), Err(ParamError::ZeroIterations));
        assert_eq!(AcoParams { n_ants: 0, ..Default::default() }.validate(), Err(ParamError::ZeroAnts));
        let one_per_job = AcoParams { n_ants: 0, init_mode: InitMode::OnePerJob, ..Default::default() };
        assert_eq!(one_per_job.validate(), Ok(()));
        assert!(AcoParams { evaporation: 1.5, ..Default::default() }.validate().is_err());
        assert!(AcoParams { alpha: -1.0, ..Default::default() }.validate().is_err());
        assert!(AcoParams { beta: f64::NAN, ..Default::default() }.validate().is_err());
        assert!(AcoParams { q: 0.0, ..Default::default() }.validate().is_err());
        assert!(AcoParams { pheromone_floor: 2.0, ..Default::default() }.validate().is_err());
        assert_eq!(InitMode::try_from(3), Err(ParamError::InitMode(3)));
        assert_eq!(IncMode::try_from(1), Ok(IncMode::Positional));
    }

    #[test]
    fn single_rollout_is_consistent() {
        let inst = toy();
        let params = AcoParams { iterations: 1, n_ants: 1, seed: 3, ..Default::default() };
        let result = run_colony(&inst, &params).unwrap();
        let schedule = decode(&inst, &result.best_path.sequence).unwrap();
        assert_eq!(schedule.makespan(), result.best_path.makespan);
        assert_eq!(result.best_makespan_per_iteration.len(), 1);
    }

    #[test]
    fn toy_reaches_optimum() {
        let inst = toy();
        for seed in 0..5 {
            let params = AcoParams { iterations: 50, n_ants: 5, seed, ..Default::default() };
            assert_eq!(run_colony(&inst, &params).unwrap().best_path.makespan, 7);
        }
    }

    #[test]
    fn one_per_job_starts_each_job() {
        let inst = toy();
        let params = AcoParams { iterations: 1, n_ants: 50, init_mode: InitMode::OnePerJob, ..Default::default() };
        assert_eq!(params.effective_ants(&inst), 2);
        let result = run_colony(&inst, &params).unwrap();
        assert_eq!(result.iteration_best_makespan.len(), 1);
    }

    #[test]
    fn trace_is_non_increasing_and_deterministic() {
        let inst = toy();
        let params = AcoParams { iterations: 30, n_ants: 2, seed: 9, ..Default::default() };
        let a = run_colony(&inst, &params).unwrap();
        assert!(a.best_makespan_per_iteration.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(a, run_colony(&inst, &params).unwrap());
    }

    #[test]
    fn zero_duration_instance() {
        let inst = Instance::from_rows("z", 1, &[&[(0, 0)], &[(0, 0)]]).unwrap();
        let result = run_colony(&inst, &AcoParams { iterations: 3, n_ants: 2, ..Default::default() }).unwrap();
        assert_eq!(result.best_path.makespan, 0);
        assert_eq!(result.best_path.sequence.len(), 2);
    }
}
