//! Job shop instances in the OR-Library text format.
//!
//! ```text
//! # optional comment lines
//! 2 2
//! 0 3 1 2
//! 1 2 0 4
//! ```
//!
//! The first data line holds `n_jobs n_machines`, followed by one line per job
//! with `n_machines` pairs of `machine duration`. Machines are 0-indexed.

use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Integral time unit. All benchmark durations are integers so makespans are
/// compared exactly.
pub type Time = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Operation {
    pub machine: usize,
    pub duration: Time,
}

/// Identity of one operation, i.e. one vertex of the search graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpId {
    pub job: usize,
    pub step: usize,
    /// Row-major global index in `0..total_ops`.
    pub flat: usize,
}

impl fmt::Display for OpId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{}.{}", self.job, self.step)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `n_jobs n_machines`")]
    MalformedHeader { line: usize },
    #[error("line {line}: invalid integer `{token}`")]
    InvalidInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} (machine, duration) pairs, found {found} values")]
    PairCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: machine index {machine} >= n_machines ({n_machines})")]
    MachineOutOfRange { line: usize, machine: i64, n_machines: usize },
    #[error("line {line}: negative duration {duration}")]
    NegativeDuration { line: usize, duration: i64 },
    #[error("expected {expected} job lines, found {found}")]
    MissingJobs { expected: usize, found: usize },
    #[error("line {line}: unexpected data after the last job")]
    TrailingData { line: usize },
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("job {job} step {step}: machine {machine} >= n_machines ({n_machines})")]
    MachineOutOfRange { job: usize, step: usize, machine: usize, n_machines: usize },
    #[error("failed to read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Immutable problem definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    n_machines: usize,
    jobs: Vec<Vec<Operation>>,
    // offsets[j] = flat index of (j, 0); offsets[n_jobs] = total ops
    offsets: Vec<usize>,
}

impl Instance {
    /// Jobs may have different operation counts.
    pub fn new(
        name: impl Into<String>,
        n_machines: usize,
        jobs: Vec<Vec<Operation>>,
    ) -> Result<Self, InstanceError> {
        for (job, ops) in jobs.iter().enumerate() {
            for (step, op) in ops.iter().enumerate() {
                if op.machine >= n_machines {
                    return Err(InstanceError::MachineOutOfRange {
                        job,
                        step,
                        machine: op.machine,
                        n_machines,
                    });
                }
            }
        }
        let mut offsets = Vec::with_capacity(jobs.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for ops in &jobs {
            acc += ops.len();
            offsets.push(acc);
        }
        Ok(Self { name: name.into(), n_machines, jobs, offsets })
    }

    /// Convenience constructor from `(machine, duration)` rows.
    pub fn from_rows(
        name: impl Into<String>,
        n_machines: usize,
        rows: &[&[(usize, Time)]],
    ) -> Result<Self, InstanceError> {
        let jobs = rows
            .iter()
            .map(|row| row.iter().map(|&(machine, duration)| Operation { machine, duration }).collect())
            .collect();
        Self::new(name, n_machines, jobs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n_jobs(&self) -> usize {
        self.jobs.len()
    }

    pub fn n_machines(&self) -> usize {
        self.n_machines
    }

    pub fn jobs(&self) -> &[Vec<Operation>] {
        &self.jobs
    }

    pub fn job_len(&self, job: usize) -> usize {
        self.jobs[job].len()
    }

    /// |V|, the number of operations over all jobs.
    pub fn total_ops(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn op(&self, job: usize, step: usize) -> OpId {
        debug_assert!(step < self.jobs[job].len());
        OpId { job, step, flat: self.offsets[job] + step }
    }

    pub fn op_from_flat(&self, flat: usize) -> OpId {
        assert!(flat < self.total_ops(), "flat index {flat} out of range");
        // offsets is sorted; find the last job whose offset is <= flat
        let job = self.offsets.partition_point(|&o| o <= flat) - 1;
        // skip empty jobs sharing the same offset
        let job = (job..self.jobs.len()).find(|&j| flat < self.offsets[j + 1]).unwrap();
        OpId { job, step: flat - self.offsets[job], flat }
    }

    pub fn operation(&self, op: OpId) -> Operation {
        self.jobs[op.job][op.step]
    }

    pub fn machine(&self, op: OpId) -> usize {
        self.jobs[op.job][op.step].machine
    }

    pub fn duration(&self, op: OpId) -> Time {
        self.jobs[op.job][op.step].duration
    }

    /// All operations in flat order.
    pub fn ops(&self) -> impl Iterator<Item = OpId> + '_ {
        (0..self.n_jobs()).flat_map(move |j| (0..self.jobs[j].len()).map(move |s| self.op(j, s)))
    }

    /// Serializes to the text format accepted by [`parse_instance`]. Only
    /// rectangular instances round-trip, since the format has no per-job length.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_jobs(), self.n_machines);
        for ops in &self.jobs {
            let line: Vec<String> = ops.iter().map(|o| format!("{} {}", o.machine, o.duration)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_int(token: &str, line: usize) -> Result<i64, ParseError> {
    token
        .parse::<i64>()
        .map_err(|_| ParseError::InvalidInteger { line, token: token.to_string() })
}

/// Parses the OR-Library format. The returned instance is named `unnamed`;
/// [`load_instance`] names it after the file stem.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data.next().ok_or(ParseError::Empty)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::MalformedHeader { line: header_line });
    }
    let n_jobs = fields[0].parse::<usize>().ok().filter(|&n| n > 0);
    let n_machines = fields[1].parse::<usize>().ok().filter(|&n| n > 0);
    let (Some(n_jobs), Some(n_machines)) = (n_jobs, n_machines) else {
        return Err(ParseError::MalformedHeader { line: header_line });
    };

    let mut jobs = Vec::with_capacity(n_jobs);
    for (line, content) in data.by_ref().take(n_jobs) {
        let values = content
            .split_whitespace()
            .map(|t| parse_int(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != 2 * n_machines {
            return Err(ParseError::PairCount { line, expected: n_machines, found: values.len() });
        }
        let mut ops = Vec::with_capacity(n_machines);
        for pair in values.chunks_exact(2) {
            let (machine, duration) = (pair[0], pair[1]);
            if machine < 0 || machine as usize >= n_machines {
                return Err(ParseError::MachineOutOfRange { line, machine, n_machines });
            }
            if duration < 0 {
                return Err(ParseError::NegativeDuration { line, duration });
            }
            let duration = Time::try_from(duration)
                .map_err(|_| ParseError::InvalidInteger { line, token: duration.to_string() })?;
            ops.push(Operation { machine: machine as usize, duration });
        }
        jobs.push(ops);
    }
    if jobs.len() < n_jobs {
        return Err(ParseError::MissingJobs { expected: n_jobs, found: jobs.len() });
    }
    if let Some((line, _)) = data.next() {
        return Err(ParseError::TrailingData { line });
    }
    Ok(Instance::new("unnamed", n_machines, jobs).expect("machine indices checked while parsing"))
}

/// Reads and parses an instance file, naming it after the file stem.
pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, InstanceError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| InstanceError::Io { path: path.display().to_string(), source })?;
    let mut inst = parse_instance(&text)
        .map_err(|source| InstanceError::Parse { path: path.display().to_string(), source })?;
    if let Some(stem) = path.file_stem() {
        inst.set_name(stem.to_string_lossy());
    }
    Ok(inst)
}
