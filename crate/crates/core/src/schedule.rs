//! Gantt schedules: decoding operation sequences, validation and export.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Instance, OpId, Time};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("position {position}: operation J{job}.{step} does not exist in the instance")]
    UnknownOp { position: usize, job: usize, step: usize },
    #[error("position {position}: {op} scheduled twice")]
    Duplicate { position: usize, op: OpId },
    #[error("position {position}: {op} precedes its job predecessor")]
    Precedence { position: usize, op: OpId },
    #[error("sequence covers {found} of {expected} operations")]
    Incomplete { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("malformed schedule JSON: {0}")]
    Json(String),
    #[error("operation J{job}.{step} does not exist in instance `{instance}`")]
    UnknownOp { instance: String, job: usize, step: usize },
    #[error("{op}: schedule says machine {machine} duration {duration}, instance says machine {expected_machine} duration {expected_duration}")]
    Mismatch {
        op: OpId,
        machine: usize,
        duration: Time,
        expected_machine: usize,
        expected_duration: Time,
    },
    #[error("{op} appears more than once")]
    Duplicate { op: OpId },
    #[error("schedule covers {found} of {expected} operations; missing {missing}")]
    Missing { expected: usize, found: usize, missing: OpId },
}

/// A constraint broken by a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `after` starts before `before` (same job, consecutive steps) completes.
    Precedence { before: OpId, after: OpId, before_end: Time, after_start: Time },
    /// Two operations occupy the same machine at the same time.
    MachineOverlap { machine: usize, first: OpId, first_span: (Time, Time), second: OpId, second_span: (Time, Time) },
    /// Recorded makespan differs from the latest completion time.
    Makespan { recorded: Time, actual: Time },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Precedence { before, after, before_end, after_start } => write!(
                f,
                "precedence violation: {after} starts at {after_start} but {before} ends at {before_end}"
            ),
            Violation::MachineOverlap { machine, first, first_span, second, second_span } => write!(
                f,
                "machine-exclusivity violation on M{machine}: {first}[{},{}) overlaps {second}[{},{})",
                first_span.0, first_span.1, second_span.0, second_span.1
            ),
            Violation::Makespan { recorded, actual } => {
                write!(f, "makespan violation: recorded {recorded}, latest completion {actual}")
            }
        }
    }
}

/// Start time of every operation (indexed by flat id) and the makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule<'a> {
    inst: &'a Instance,
    start: Vec<Time>,
    makespan: Time,
}

impl<'a> Schedule<'a> {
    /// Wraps raw start times without checking them; see [`validate`](Self::validate).
    pub fn from_parts(inst: &'a Instance, start: Vec<Time>, makespan: Time) -> Self {
        assert_eq!(start.len(), inst.total_ops(), "one start time per operation");
        Self { inst, start, makespan }
    }

    /// Wraps start times and derives the makespan from them.
    pub fn from_starts(inst: &'a Instance, start: Vec<Time>) -> Self {
        let makespan = completion(inst, &start);
        Self::from_parts(inst, start, makespan)
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn start(&self, op: OpId) -> Time {
        self.start[op.flat]
    }

    pub fn end(&self, op: OpId) -> Time {
        self.start[op.flat] + self.inst.duration(op)
    }

    pub fn starts(&self) -> &[Time] {
        &self.start
    }

    pub fn makespan(&self) -> Time {
        self.makespan
    }

    /// Checks job precedence, machine exclusivity and the makespan, in that
    /// order, and reports the first violation found.
    pub fn validate(&self) -> Result<(), Violation> {
        let inst = self.inst;
        for job in 0..inst.n_jobs() {
            for step in 1..inst.job_len(job) {
                let (before, after) = (inst.op(job, step - 1), inst.op(job, step));
                if self.start(after) < self.end(before) {
                    return Err(Violation::Precedence {
                        before,
                        after,
                        before_end: self.end(before),
                        after_start: self.start(after),
                    });
                }
            }
        }

        let mut by_machine: Vec<Vec<OpId>> = vec![Vec::new(); inst.n_machines()];
        for op in inst.ops() {
            by_machine[inst.machine(op)].push(op);
        }
        for (machine, ops) in by_machine.iter().enumerate() {
            for (i, &a) in ops.iter().enumerate() {
                for &b in &ops[i + 1..] {
                    let (sa, ea, sb, eb) = (self.start(a), self.end(a), self.start(b), self.end(b));
                    // half-open intervals; zero-length operations never collide
                    if sa < ea && sb < eb && sa < eb && sb < ea {
                        let (first, second) = if (sa, a) <= (sb, b) { (a, b) } else { (b, a) };
                        return Err(Violation::MachineOverlap {
                            machine,
                            first,
                            first_span: (self.start(first), self.end(first)),
                            second,
                            second_span: (self.start(second), self.end(second)),
                        });
                    }
                }
            }
        }

        let actual = completion(inst, &self.start);
        if actual != self.makespan {
            return Err(Violation::Makespan { recorded: self.makespan, actual });
        }
        Ok(())
    }

    /// One line per machine, operations in start order:
    /// `M0: J0.0[0,3) J1.1[3,7)`. Empty when the instance has no operations.
    pub fn render_gantt(&self) -> String {
        let inst = self.inst;
        if inst.total_ops() == 0 {
            return String::new();
        }
        let mut by_machine: Vec<Vec<OpId>> = vec![Vec::new(); inst.n_machines()];
        for op in inst.ops() {
            by_machine[inst.machine(op)].push(op);
        }
        let lines: Vec<String> = by_machine
            .iter_mut()
            .enumerate()
            .map(|(m, ops)| {
                ops.sort_by_key(|&op| (self.start(op), op.job, op.step));
                let mut line = format!("M{m}:");
                for &op in ops.iter() {
                    line.push_str(&format!(" {op}[{},{})", self.start(op), self.end(op)));
                }
                line
            })
            .collect();
        lines.join("\n")
    }

    pub fn to_json_value(&self) -> ScheduleJson {
        ScheduleJson {
            instance: self.inst.name().to_string(),
            makespan: Some(self.makespan),
            operations: self
                .inst
                .ops()
                .map(|op| ScheduledOp {
                    job: op.job,
                    step: op.step,
                    machine: self.inst.machine(op),
                    start: self.start(op),
                    duration: self.inst.duration(op),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("schedule serializes")
    }

    /// Rebuilds a schedule from its JSON export. Operations must match the
    /// instance and cover it exactly once; timing is left to [`validate`](Self::validate).
    pub fn from_json(inst: &'a Instance, text: &str) -> Result<Self, ScheduleError> {
        let parsed: ScheduleJson =
            serde_json::from_str(text).map_err(|e| ScheduleError::Json(e.to_string()))?;
        Self::from_json_value(inst, &parsed)
    }

    pub fn from_json_value(inst: &'a Instance, parsed: &ScheduleJson) -> Result<Self, ScheduleError> {
        let mut start: Vec<Option<Time>> = vec![None; inst.total_ops()];
        for entry in &parsed.operations {
            if entry.job >= inst.n_jobs() || entry.step >= inst.job_len(entry.job) {
                return Err(ScheduleError::UnknownOp {
                    instance: inst.name().to_string(),
                    job: entry.job,
                    step: entry.step,
                });
            }
            let op = inst.op(entry.job, entry.step);
            let expected = inst.operation(op);
            if expected.machine != entry.machine || expected.duration != entry.duration {
                return Err(ScheduleError::Mismatch {
                    op,
                    machine: entry.machine,
                    duration: entry.duration,
                    expected_machine: expected.machine,
                    expected_duration: expected.duration,
                });
            }
            if start[op.flat].replace(entry.start).is_some() {
                return Err(ScheduleError::Duplicate { op });
            }
        }
        if let Some(flat) = start.iter().position(Option::is_none) {
            return Err(ScheduleError::Missing {
                expected: inst.total_ops(),
                found: parsed.operations.len(),
                missing: inst.op_from_flat(flat),
            });
        }
        let start: Vec<Time> = start.into_iter().map(Option::unwrap).collect();
        Ok(match parsed.makespan {
            Some(m) => Self::from_parts(inst, start, m),
            None => Self::from_starts(inst, start),
        })
    }
}

fn completion(inst: &Instance, start: &[Time]) -> Time {
    inst.ops().map(|op| start[op.flat] + inst.duration(op)).max().unwrap_or(0)
}

/// JSON export format for downstream plotting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleJson {
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub makespan: Option<Time>,
    pub operations: Vec<ScheduledOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledOp {
    pub job: usize,
    pub step: usize,
    pub machine: usize,
    pub start: Time,
    pub duration: Time,
}

/// Semi-active decoding: each operation, in sequence order, starts as soon as
/// both its job and its machine are free.
pub fn decode<'a>(inst: &'a Instance, sequence: &[OpId]) -> Result<Schedule<'a>, DecodeError> {
    let mut next_step = vec![0usize; inst.n_jobs()];
    let mut job_ready = vec![0 as Time; inst.n_jobs()];
    let mut machine_ready = vec![0 as Time; inst.n_machines()];
    let mut start = vec![0 as Time; inst.total_ops()];
    let mut makespan = 0;

    for (position, &op) in sequence.iter().enumerate() {
        if op.job >= inst.n_jobs() || op.step >= inst.job_len(op.job) {
            return Err(DecodeError::UnknownOp { position, job: op.job, step: op.step });
        }
        let op = inst.op(op.job, op.step);
        match op.step.cmp(&next_step[op.job]) {
            std::cmp::Ordering::Less => return Err(DecodeError::Duplicate { position, op }),
            std::cmp::Ordering::Greater => return Err(DecodeError::Precedence { position, op }),
            std::cmp::Ordering::Equal => {}
        }
        let machine = inst.machine(op);
        let s = job_ready[op.job].max(machine_ready[machine]);
        let e = s + inst.duration(op);
        start[op.flat] = s;
        job_ready[op.job] = e;
        machine_ready[machine] = e;
        next_step[op.job] += 1;
        makespan = makespan.max(e);
    }
    if sequence.len() != inst.total_ops() {
        return Err(DecodeError::Incomplete { expected: inst.total_ops(), found: sequence.len() });
    }
    Ok(Schedule { inst, start, makespan })
}
