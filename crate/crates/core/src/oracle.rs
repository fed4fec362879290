//! Exhaustive optimum for tiny instances.
//!
//! Depth-first search over job frontiers enumerates every feasible
//! interleaving, which is exactly the space the ants sample from. Placement
//! bookkeeping is kept local to this module so it can check the solver.

use thiserror::Error;

use crate::instance::{Instance, OpId, Time};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{count} interleavings exceed the cap of {cap}; use a smaller instance")]
    CapExceeded { count: u128, cap: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Time,
    pub optimal_sequence: Vec<OpId>,
    /// Complete interleavings decoded (equals the multinomial count when
    /// pruning is off).
    pub n_sequences: u128,
}

/// `|V|! / prod |job_i|!`, saturating at `u128::MAX`.
pub fn interleaving_count(inst: &Instance) -> u128 {
    // running product of binomials C(placed + len, len) keeps numbers small
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for job in 0..inst.n_jobs() {
        let len = inst.job_len(job) as u128;
        for k in 1..=len {
            // count * (placed + k) / k stays integral at every step
            let Some(num) = count.checked_mul(placed + k) else {
                return u128::MAX;
            };
            count = num / k;
        }
        placed += len;
    }
    count
}

/// Enumerates every interleaving; no pruning.
pub fn exhaustive_optimum(inst: &Instance, cap: u128) -> Result<OracleResult, OracleError> {
    search(inst, cap, false)
}

/// Branch and bound variant: skips subtrees whose partial makespan already
/// reaches the incumbent. Same optimum, fewer leaves.
pub fn pruned_optimum(inst: &Instance, cap: u128) -> Result<OracleResult, OracleError> {
    search(inst, cap, true)
}

struct Dfs<'a> {
    inst: &'a Instance,
    prune: bool,
    next_step: Vec<usize>,
    job_ready: Vec<Time>,
    machine_ready: Vec<Time>,
    sequence: Vec<OpId>,
    best: Option<(Time, Vec<OpId>)>,
    leaves: u128,
}

impl Dfs<'_> {
    fn visit(&mut self, makespan: Time) {
        if self.prune {
            if let Some((best, _)) = &self.best {
                if makespan >= *best {
                    return;
                }
            }
        }
        if self.sequence.len() == self.inst.total_ops() {
            self.leaves += 1;
            if self.best.as_ref().is_none_or(|(b, _)| makespan < *b) {
                self.best = Some((makespan, self.sequence.clone()));
            }
            return;
        }
        for job in 0..self.inst.n_jobs() {
            let step = self.next_step[job];
            if step >= self.inst.job_len(job) {
                continue;
            }
            let op = self.inst.op(job, step);
            let machine = self.inst.machine(op);
            let (saved_job, saved_machine) = (self.job_ready[job], self.machine_ready[machine]);
            let end = saved_job.max(saved_machine) + self.inst.duration(op);

            self.job_ready[job] = end;
            self.machine_ready[machine] = end;
            self.next_step[job] += 1;
            self.sequence.push(op);
            self.visit(makespan.max(end));
            self.sequence.pop();
            self.next_step[job] -= 1;
            self.job_ready[job] = saved_job;
            self.machine_ready[machine] = saved_machine;
        }
    }
}

fn search(inst: &Instance, cap: u128, prune: bool) -> Result<OracleResult, OracleError> {
    let count = interleaving_count(inst);
    if count > cap {
        return Err(OracleError::CapExceeded { count, cap });
    }
    let mut dfs = Dfs {
        inst,
        prune,
        next_step: vec![0; inst.n_jobs()],
        job_ready: vec![0; inst.n_jobs()],
        machine_ready: vec![0; inst.n_machines()],
        sequence: Vec::with_capacity(inst.total_ops()),
        best: None,
        leaves: 0,
    };
    dfs.visit(0);
    let (optimum, optimal_sequence) = dfs.best.expect("at least the empty interleaving exists");
    Ok(OracleResult { optimum, optimal_sequence, n_sequences: dfs.leaves })
}
