//! Multi-execution experiments, parameter sweeps and their statistics.
//!
//! Config files hold one experiment each as flat `key = value` lines:
//!
//! ```text
//! # baseline with evaporation lowered
//! label = evap. C
//! instance = ../data/instances/ft06.txt
//! ite = 1000
//! ants = 100
//! elit = 0
//! alpha = 1
//! beta = 1
//! evap = 0.01
//! q = 1
//! init = 0
//! exec = 30
//! inc = 0
//! seed = 1
//! ```
//!
//! Missing parameter keys fall back to [`AcoParams::default`]. A relative
//! `instance` path is resolved against the config file's directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::colony::{run_colony, AcoParams, ColonyResult, IncMode, InitMode, ParamError};
use crate::instance::{load_instance, Instance, InstanceError, Time};
use crate::manifest::Manifest;

/// Header comment of the sweep CSV.
pub const SEMIDEVIATION_NOTE: &str =
    "# std: population standard deviation; sup_std/inf_std: population semideviation over samples at or above/below the mean";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value `{value}` for `{key}`")]
    Value { line: usize, key: String, value: String },
    #[error("missing `instance` key")]
    MissingInstance,
    #[error("executions must be at least 1")]
    ZeroExecutions,
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("failed to read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("executions must be at least 1")]
    ZeroExecutions,
    #[error("empty sample")]
    EmptySample,
    #[error("failed to write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub label: String,
    pub instance_path: PathBuf,
    pub params: AcoParams,
    pub executions: usize,
}

const KEYS: &[&str] = &[
    "label", "instance", "seed", "ite", "ants", "elit", "alpha", "beta", "evap", "q", "init", "exec", "inc",
    "pheromone_init", "pheromone_floor",
];

impl ExperimentConfig {
    pub fn new(label: impl Into<String>, instance_path: impl Into<PathBuf>, params: AcoParams, executions: usize) -> Self {
        Self { label: label.into(), instance_path: instance_path.into(), params, executions }
    }

    /// Parses a config; `base_dir` anchors a relative instance path.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let mut params = AcoParams::default();
        let mut label = None;
        let mut instance = None;
        let mut executions = 30;
        let mut seen: Vec<&str> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let Some(&key) = KEYS.iter().find(|&&k| k == key) else {
                return Err(ConfigError::UnknownKey { line, key: key.to_string() });
            };
            if seen.contains(&key) {
                return Err(ConfigError::DuplicateKey { line, key: key.to_string() });
            }
            seen.push(key);

            let bad = || ConfigError::Value { line, key: key.to_string(), value: value.to_string() };
            let int = || value.parse::<i64>().map_err(|_| bad());
            let uint = || value.parse::<usize>().map_err(|_| bad());
            let real = || value.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
            match key {
                "label" => label = Some(value.to_string()),
                "instance" => instance = Some(base_dir.join(value)),
                "seed" => params.seed = value.parse().map_err(|_| bad())?,
                "ite" => params.iterations = uint()?,
                "ants" => params.n_ants = uint()?,
                "elit" => {
                    params.elitism = match int()? {
                        0 => false,
                        1 => true,
                        _ => return Err(bad()),
                    }
                }
                "alpha" => params.alpha = real()?,
                "beta" => params.beta = real()?,
                "evap" => params.evaporation = real()?,
                "q" => params.q = real()?,
                "init" => params.init_mode = InitMode::try_from(int()?)?,
                "inc" => params.inc_mode = IncMode::try_from(int()?)?,
                "exec" => executions = uint()?,
                "pheromone_init" => params.pheromone_init = real()?,
                "pheromone_floor" => params.pheromone_floor = real()?,
                _ => unreachable!("key list is exhaustive"),
            }
        }

        let instance_path = instance.ok_or(ConfigError::MissingInstance)?;
        if executions == 0 {
            return Err(ConfigError::ZeroExecutions);
        }
        params.validate()?;
        let label = label.unwrap_or_else(|| {
            instance_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
        });
        Ok(Self { label, instance_path, params, executions })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text, path.parent().unwrap_or_else(|| Path::new(".")))
    }

    /// Serializes back to the `key = value` format with an absolute-or-as-given
    /// instance path.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        format!(
            "label = {}\ninstance = {}\nite = {}\nants = {}\nelit = {}\nalpha = {}\nbeta = {}\nevap = {}\nq = {}\ninit = {}\nexec = {}\ninc = {}\nseed = {}\npheromone_init = {}\npheromone_floor = {}\n",
            self.label,
            self.instance_path.display(),
            p.iterations,
            p.n_ants,
            u8::from(p.elitism),
            p.alpha,
            p.beta,
            p.evaporation,
            p.q,
            p.init_mode as u8,
            self.executions,
            p.inc_mode as u8,
            p.seed,
            p.pheromone_init,
            p.pheromone_floor,
        )
    }
}

/// Summary of the best makespans over independent executions.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub minimum: Time,
    pub maximum: Time,
    pub average: f64,
    /// Population standard deviation.
    pub std: f64,
    /// Root mean square deviation of the samples at or above the mean.
    pub sup_std: f64,
    /// Root mean square deviation of the samples at or below the mean.
    pub inf_std: f64,
    pub per_execution: Vec<Time>,
}

fn rms(deviations: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = deviations.fold((0.0, 0usize), |(s, n), d| (s + d * d, n + 1));
    if n == 0 {
        0.0
    } else {
        (sum / n as f64).sqrt()
    }
}

pub fn compute_stats(values: &[Time]) -> Result<RunStats, HarnessError> {
    if values.is_empty() {
        return Err(HarnessError::EmptySample);
    }
    let n = values.len() as u64;
    let total: u64 = values.iter().map(|&v| u64::from(v)).sum();
    let average = total as f64 / n as f64;
    // side of the mean decided in integers: v >= total / n  <=>  v * n >= total
    let above = |v: Time| u64::from(v) * n >= total;
    let below = |v: Time| u64::from(v) * n <= total;
    let dev = |v: Time| f64::from(v) - average;
    Ok(RunStats {
        minimum: *values.iter().min().unwrap(),
        maximum: *values.iter().max().unwrap(),
        average,
        std: rms(values.iter().map(|&v| dev(v))),
        sup_std: rms(values.iter().copied().filter(|&v| above(v)).map(dev)),
        inf_std: rms(values.iter().copied().filter(|&v| below(v)).map(dev)),
        per_execution: values.to_vec(),
    })
}

/// Seed of execution `index`.
pub fn execution_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add(index as u64)
}

/// Runs `executions` independent colonies (seeds `seed + 0 ..`) on up to
/// `workers` threads. Results come back in execution order regardless of
/// scheduling.
pub fn run_executions(
    inst: &Instance,
    params: &AcoParams,
    executions: usize,
    workers: Option<usize>,
) -> Result<Vec<ColonyResult>, HarnessError> {
    if executions == 0 {
        return Err(HarnessError::ZeroExecutions);
    }
    params.validate()?;
    let one = |e: usize| {
        let p = AcoParams { seed: execution_seed(params.seed, e), ..params.clone() };
        run_colony(inst, &p).expect("params validated")
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let run = || (0..executions).into_par_iter().map(one).collect::<Vec<_>>();
        match workers {
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .expect("thread pool");
                Ok(pool.install(run))
            }
            None => Ok(run()),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        Ok((0..executions).map(one).collect())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub instance: String,
    pub stats: RunStats,
    pub runs: Vec<ColonyResult>,
    pub wall_time_seconds: f64,
}

impl ExperimentOutcome {
    /// Execution with the lowest best makespan (first one on ties).
    pub fn best_run(&self) -> &ColonyResult {
        self.runs.iter().min_by_key(|r| r.best_path.makespan).expect("at least one execution")
    }
}

pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentOutcome, HarnessError> {
    let inst = load_instance(&config.instance_path)?;
    run_experiment_on(&inst, &config.params, config.executions, workers)
}

pub fn run_experiment_on(
    inst: &Instance,
    params: &AcoParams,
    executions: usize,
    workers: Option<usize>,
) -> Result<ExperimentOutcome, HarnessError> {
    let started = Instant::now();
    let runs = run_executions(inst, params, executions, workers)?;
    let bests: Vec<Time> = runs.iter().map(|r| r.best_path.makespan).collect();
    Ok(ExperimentOutcome {
        instance: inst.name().to_string(),
        stats: compute_stats(&bests)?,
        runs,
        wall_time_seconds: started.elapsed().as_secs_f64(),
    })
}

/// One CSV row of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub label: String,
    pub instance: String,
    pub optimum: Option<Time>,
    pub config: Option<ExperimentConfig>,
    pub outcome: Result<(RunStats, f64), String>,
}

impl SweepRow {
    pub fn failed(label: impl Into<String>, error: impl ToString) -> Self {
        Self { label: label.into(), instance: String::new(), optimum: None, config: None, outcome: Err(error.to_string()) }
    }

    pub fn stats(&self) -> Option<&RunStats> {
        self.outcome.as_ref().ok().map(|(s, _)| s)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

pub const CSV_COLUMNS: &[&str] = &[
    "label", "instance", "optimum", "minimum", "maximum", "average", "std", "sup_std", "inf_std",
    "wall_time_seconds", "ite", "ants", "elit", "alpha", "beta", "evap", "q", "init", "exec", "inc", "seed",
    "error",
];

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }

    /// The CSV document: a comment line documenting the dispersion columns,
    /// the header, then one row per config.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SEMIDEVIATION_NOTE);
        out.push('\n');
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(CSV_COLUMNS).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row.csv_record()).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8"));
        out
    }

    /// Plain-text table for terminals.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{:<12} {:<8} {:>7} {:>7} {:>7} {:>9} {:>7} {:>8}\n",
            "label", "instance", "optimum", "min", "max", "average", "std", "time[s]"
        );
        for row in &self.rows {
            let optimum = row.optimum.map_or("-".to_string(), |o| o.to_string());
            match &row.outcome {
                Ok((s, t)) => out.push_str(&format!(
                    "{:<12} {:<8} {:>7} {:>7} {:>7} {:>9.2} {:>7.2} {:>8.1}\n",
                    row.label, row.instance, optimum, s.minimum, s.maximum, s.average, s.std, t
                )),
                Err(e) => out.push_str(&format!("{:<12} {:<8} error: {e}\n", row.label, row.instance)),
            }
        }
        out
    }
}

impl SweepRow {
    fn csv_record(&self) -> Vec<String> {
        let blank = || String::new();
        let mut rec = vec![self.label.clone(), self.instance.clone(), self.optimum.map_or_else(blank, |o| o.to_string())];
        match &self.outcome {
            Ok((s, t)) => rec.extend([
                s.minimum.to_string(),
                s.maximum.to_string(),
                s.average.to_string(),
                s.std.to_string(),
                s.sup_std.to_string(),
                s.inf_std.to_string(),
                format!("{t:.3}"),
            ]),
            Err(_) => rec.extend(std::iter::repeat_with(blank).take(7)),
        }
        match &self.config {
            Some(c) => {
                let p = &c.params;
                rec.extend([
                    p.iterations.to_string(),
                    p.n_ants.to_string(),
                    u8::from(p.elitism).to_string(),
                    p.alpha.to_string(),
                    p.beta.to_string(),
                    p.evaporation.to_string(),
                    p.q.to_string(),
                    (p.init_mode as u8).to_string(),
                    c.executions.to_string(),
                    (p.inc_mode as u8).to_string(),
                    p.seed.to_string(),
                ]);
            }
            None => rec.extend(std::iter::repeat_with(blank).take(11)),
        }
        rec.push(self.outcome.as_ref().err().cloned().unwrap_or_default());
        rec
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub workers: Option<usize>,
    pub manifest: Manifest,
    /// When set, writes `<dir>/<label>_exec<k>.csv` convergence traces.
    pub trace_dir: Option<PathBuf>,
}

/// Runs every config in order. A failing config yields an error row and the
/// sweep continues.
pub fn sweep(configs: &[ExperimentConfig], options: &SweepOptions) -> SweepReport {
    let rows = configs.iter().map(|c| sweep_one(c, options)).collect();
    SweepReport { rows }
}

fn sweep_one(config: &ExperimentConfig, options: &SweepOptions) -> SweepRow {
    let mut row = SweepRow {
        label: config.label.clone(),
        instance: config
            .instance_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        optimum: None,
        config: Some(config.clone()),
        outcome: Err(String::new()),
    };
    row.optimum = options.manifest.optimum(&row.instance);
    row.outcome = run_experiment(config, options.workers)
        .and_then(|outcome| {
            if let Some(dir) = &options.trace_dir {
                write_traces(dir, &config.label, &outcome.runs)?;
            }
            Ok((outcome.stats, outcome.wall_time_seconds))
        })
        .map_err(|e| e.to_string());
    row
}

/// `iteration,best_makespan` rows for one execution.
pub fn trace_csv(trace: &[Time]) -> String {
    let mut out = String::from("iteration,best_makespan\n");
    for (i, m) in trace.iter().enumerate() {
        out.push_str(&format!("{i},{m}\n"));
    }
    out
}

fn slug(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    s.split('_').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("_")
}

fn write_traces(dir: &Path, label: &str, runs: &[ColonyResult]) -> Result<(), HarnessError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| HarnessError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    for (k, run) in runs.iter().enumerate() {
        let path = dir.join(format!("{}_exec{k}.csv", slug(label)));
        std::fs::write(&path, trace_csv(&run.best_makespan_per_iteration)).map_err(io(&path))?;
    }
    Ok(())
}
