//! Partial paths through the complete search graph.
//!
//! The graph over all operations is complete, so edges are never stored: any
//! frontier operation (the next unscheduled step of an unfinished job) is
//! reachable from the current vertex. An ant may not pick an operation whose
//! job predecessor is still unscheduled, nor an operation it already picked;
//! both rules reduce to "choose among job frontiers".

use thiserror::Error;

use crate::instance::{Instance, OpId, Time};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("{op} is not schedulable: job {} is at step {next_step}", op.job)]
    Infeasible { op: OpId, next_step: usize },
}

/// An ant's partial path together with its earliest-start placement.
#[derive(Debug, Clone)]
pub struct SearchState<'a> {
    inst: &'a Instance,
    path: Vec<OpId>,
    next_step: Vec<usize>,
    job_ready: Vec<Time>,
    machine_ready: Vec<Time>,
    op_start: Vec<Option<Time>>,
    partial_makespan: Time,
}

impl<'a> SearchState<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        Self {
            inst,
            path: Vec::with_capacity(inst.total_ops()),
            next_step: vec![0; inst.n_jobs()],
            job_ready: vec![0; inst.n_jobs()],
            machine_ready: vec![0; inst.n_machines()],
            op_start: vec![None; inst.total_ops()],
            partial_makespan: 0,
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn path(&self) -> &[OpId] {
        &self.path
    }

    pub fn into_path(self) -> Vec<OpId> {
        self.path
    }

    pub fn last(&self) -> Option<OpId> {
        self.path.last().copied()
    }

    pub fn next_step(&self) -> &[usize] {
        &self.next_step
    }

    pub fn op_start(&self, op: OpId) -> Option<Time> {
        self.op_start[op.flat]
    }

    pub fn partial_makespan(&self) -> Time {
        self.partial_makespan
    }

    pub fn is_complete(&self) -> bool {
        self.path.len() == self.inst.total_ops()
    }

    /// One frontier operation per unfinished job, in job order.
    pub fn candidates(&self) -> Vec<OpId> {
        let mut out = Vec::with_capacity(self.inst.n_jobs());
        self.candidates_into(&mut out);
        out
    }

    /// Allocation-free variant of [`candidates`](Self::candidates).
    pub fn candidates_into(&self, out: &mut Vec<OpId>) {
        out.clear();
        out.extend(
            self.next_step
                .iter()
                .enumerate()
                .filter(|&(j, &s)| s < self.inst.job_len(j))
                .map(|(j, &s)| self.inst.op(j, s)),
        );
    }

    fn check(&self, op: OpId) -> Result<(), SearchError> {
        let next_step = self.next_step[op.job];
        if op.step != next_step || next_step >= self.inst.job_len(op.job) {
            return Err(SearchError::Infeasible { op, next_step });
        }
        Ok(())
    }

    /// Earliest start of a frontier operation given the current placement.
    pub fn earliest_start(&self, op: OpId) -> Time {
        self.job_ready[op.job].max(self.machine_ready[self.inst.machine(op)])
    }

    /// Appends `op` to the path at its earliest start and returns that start.
    pub fn advance(&mut self, op: OpId) -> Result<Time, SearchError> {
        self.check(op)?;
        let start = self.earliest_start(op);
        let end = start + self.inst.duration(op);
        self.job_ready[op.job] = end;
        self.machine_ready[self.inst.machine(op)] = end;
        self.op_start[op.flat] = Some(start);
        self.partial_makespan = self.partial_makespan.max(end);
        self.next_step[op.job] += 1;
        self.path.push(op);
        Ok(start)
    }

    /// Growth of the partial makespan if `op` were appended. Never negative.
    pub fn delta_makespan(&self, op: OpId) -> Result<Time, SearchError> {
        self.check(op)?;
        Ok(self.delta_unchecked(op))
    }

    fn delta_unchecked(&self, op: OpId) -> Time {
        let end = self.earliest_start(op) + self.inst.duration(op);
        end.saturating_sub(self.partial_makespan)
    }

    /// Attractiveness `1 / (1 + Δm)`: moves that keep the makespan are
    /// maximally attractive.
    pub fn heuristic_value(&self, op: OpId) -> Result<f64, SearchError> {
        self.delta_makespan(op).map(heuristic_from_delta)
    }

    /// Heuristic for an operation known to come from [`candidates`](Self::candidates).
    pub(crate) fn frontier_heuristic(&self, op: OpId) -> f64 {
        debug_assert!(self.check(op).is_ok());
        heuristic_from_delta(self.delta_unchecked(op))
    }
}

pub fn heuristic_from_delta(delta: Time) -> f64 {
    1.0 / (1.0 + f64::from(delta))
}
