//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns JSON strings. The `*_json` functions hold
//! the logic so they can be tested natively; the `#[wasm_bindgen]` wrappers
//! only convert errors into JS exceptions.

use jssp_aco::colony::transition_probabilities;
use jssp_aco::oracle::pruned_optimum;
use jssp_aco::search::heuristic_from_delta;
use jssp_aco::{decode, parse_instance, run_colony, AcoParams, IncMode, InitMode, Instance, SearchState, Time};
use serde::{Deserialize, Serialize};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Upper bound on `iterations * ants` so a page cannot hang the tab.
pub const MAX_WORK: usize = 2_000_000;

/// Oracle interleaving cap for the browser.
pub const ORACLE_CAP: u128 = 2_000_000;

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveRequest {
    pub iterations: usize,
    pub ants: usize,
    pub elitism: bool,
    pub alpha: f64,
    pub beta: f64,
    pub evap: f64,
    pub q: f64,
    pub init: i64,
    pub inc: i64,
    pub seed: u64,
}

impl Default for SolveRequest {
    fn default() -> Self {
        let p = AcoParams::default();
        SolveRequest {
            iterations: 200,
            ants: 20,
            elitism: p.elitism,
            alpha: p.alpha,
            beta: p.beta,
            evap: p.evaporation,
            q: p.q,
            init: p.init_mode as i64,
            inc: p.inc_mode as i64,
            seed: p.seed,
        }
    }
}

impl SolveRequest {
    fn params(&self) -> Result<AcoParams, String> {
        let params = AcoParams {
            iterations: self.iterations,
            n_ants: self.ants,
            elitism: self.elitism,
            alpha: self.alpha,
            beta: self.beta,
            evaporation: self.evap,
            q: self.q,
            init_mode: InitMode::try_from(self.init).map_err(|e| e.to_string())?,
            inc_mode: IncMode::try_from(self.inc).map_err(|e| e.to_string())?,
            seed: self.seed,
            ..AcoParams::default()
        };
        params.validate().map_err(|e| e.to_string())?;
        Ok(params)
    }
}

fn instance(text: &str) -> Result<Instance, String> {
    let mut inst = parse_instance(text).map_err(|e| e.to_string())?;
    inst.set_name("browser");
    Ok(inst)
}

/// Runs the colony; returns the best schedule and the convergence traces.
pub fn solve_json(instance_text: &str, request_json: &str) -> Result<String, String> {
    let inst = instance(instance_text)?;
    let request: SolveRequest = if request_json.trim().is_empty() {
        SolveRequest::default()
    } else {
        serde_json::from_str(request_json).map_err(|e| format!("bad parameters: {e}"))?
    };
    let params = request.params()?;
    let work = params.iterations.saturating_mul(params.effective_ants(&inst));
    if work > MAX_WORK {
        return Err(format!("iterations x ants = {work} exceeds the demo limit of {MAX_WORK}"));
    }
    let result = run_colony(&inst, &params).map_err(|e| e.to_string())?;
    let schedule = decode(&inst, &result.best_path.sequence).map_err(|e| e.to_string())?;
    Ok(json!({
        "n_jobs": inst.n_jobs(),
        "n_machines": inst.n_machines(),
        "makespan": result.best_path.makespan,
        "best_per_iteration": result.best_makespan_per_iteration,
        "iteration_best": result.iteration_best_makespan,
        "schedule": schedule.to_json_value(),
    })
    .to_string())
}

#[derive(Debug, Serialize)]
struct Candidate {
    op: String,
    job: usize,
    start: Time,
    delta: Time,
    eta: f64,
    tau: f64,
    probability: f64,
}

/// Replays `prefix` (job indices, one per scheduled operation) and returns the
/// transition distribution over the remaining job frontiers. `taus_json` is an
/// optional array of pheromone values, one per candidate, defaulting to 1.
pub fn explore_json(
    instance_text: &str,
    prefix_json: &str,
    taus_json: &str,
    alpha: f64,
    beta: f64,
) -> Result<String, String> {
    let inst = instance(instance_text)?;
    let prefix: Vec<usize> = parse_or_default(prefix_json, "prefix")?;
    let mut state = SearchState::new(&inst);
    for (i, &job) in prefix.iter().enumerate() {
        let op = state
            .candidates()
            .into_iter()
            .find(|op| op.job == job)
            .ok_or_else(|| format!("prefix[{i}]: job {job} has no remaining operation"))?;
        state.advance(op).map_err(|e| e.to_string())?;
    }
    let candidates = state.candidates();
    if candidates.is_empty() {
        return Ok(json!({ "partial_makespan": state.partial_makespan(), "candidates": [] }).to_string());
    }
    let taus: Vec<f64> = parse_or_default(taus_json, "taus")?;
    let taus = if taus.is_empty() { vec![1.0; candidates.len()] } else { taus };
    if taus.len() != candidates.len() {
        return Err(format!("expected {} pheromone values, got {}", candidates.len(), taus.len()));
    }
    let mut deltas = Vec::with_capacity(candidates.len());
    for &op in &candidates {
        deltas.push(state.delta_makespan(op).map_err(|e| e.to_string())?);
    }
    let etas: Vec<f64> = deltas.iter().map(|&d| heuristic_from_delta(d)).collect();
    let probs = transition_probabilities(&taus, &etas, alpha, beta).map_err(|e| e.to_string())?;
    let rows: Vec<Candidate> = candidates
        .iter()
        .enumerate()
        .map(|(i, &op)| Candidate {
            op: op.to_string(),
            job: op.job,
            start: state.earliest_start(op),
            delta: deltas[i],
            eta: etas[i],
            tau: taus[i],
            probability: probs[i],
        })
        .collect();
    Ok(json!({ "partial_makespan": state.partial_makespan(), "candidates": rows }).to_string())
}

/// Exact optimum by exhaustive search, for instances with few interleavings.
pub fn oracle_json(instance_text: &str) -> Result<String, String> {
    let inst = instance(instance_text)?;
    let result = pruned_optimum(&inst, ORACLE_CAP).map_err(|e| e.to_string())?;
    let schedule = decode(&inst, &result.optimal_sequence).map_err(|e| e.to_string())?;
    Ok(json!({
        "optimum": result.optimum,
        "sequences": result.n_sequences.to_string(),
        "schedule": schedule.to_json_value(),
    })
    .to_string())
}

fn parse_or_default<T: for<'de> Deserialize<'de> + Default>(text: &str, what: &str) -> Result<T, String> {
    match text.trim() {
        "" | "null" => Ok(T::default()),
        t => serde_json::from_str(t).map_err(|e| format!("bad {what}: {e}")),
    }
}

#[wasm_bindgen]
pub fn solve(instance_text: &str, request_json: &str) -> Result<String, JsError> {
    solve_json(instance_text, request_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn explore(instance_text: &str, prefix_json: &str, taus_json: &str, alpha: f64, beta: f64) -> Result<String, JsError> {
    explore_json(instance_text, prefix_json, taus_json, alpha, beta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn oracle(instance_text: &str) -> Result<String, JsError> {
    oracle_json(instance_text).map_err(|e| JsError::new(&e))
}
