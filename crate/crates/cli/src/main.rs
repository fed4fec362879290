//! `jssp-aco`: solve job shop instances with the elitist ant colony, check
//! schedules, brute-force tiny instances and run benchmark sweeps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use jssp_aco::harness::{trace_csv, SweepOptions, SweepReport, SweepRow};
use jssp_aco::oracle::{exhaustive_optimum, pruned_optimum, DEFAULT_CAP};
use jssp_aco::{
    decode, load_instance, run_colony, sweep, AcoParams, ExperimentConfig, IncMode, InitMode, Instance, Manifest,
    Schedule,
};

#[derive(Parser)]
#[command(name = "jssp-aco", version, about = "Job shop scheduling with an elitist ant colony")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the colony on one instance.
    Solve(SolveArgs),
    /// Check a schedule JSON file against an instance.
    Validate {
        instance: PathBuf,
        schedule: PathBuf,
    },
    /// Exhaustive optimum for tiny instances.
    Oracle {
        instance: PathBuf,
        /// Refuse instances with more interleavings than this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Skip subtrees that cannot beat the incumbent.
        #[arg(long)]
        prune: bool,
        /// Print the optimal schedule.
        #[arg(long)]
        gantt: bool,
    },
    /// Run experiment config files and write a CSV report.
    Bench {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for per-execution convergence traces.
        #[arg(long)]
        traces: Option<PathBuf>,
        /// Worker threads for the execution pool.
        #[arg(long, env = "JSSP_ACO_WORKERS")]
        workers: Option<usize>,
        /// Known-optimum manifest (CSV); defaults to the bundled one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    /// Ants per iteration (ignored with --init 2).
    #[arg(long, default_value_t = 100)]
    ants: usize,
    /// Reinforce the global-best path every iteration.
    #[arg(long)]
    elitism: bool,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Evaporation rate in [0, 1].
    #[arg(long, default_value_t = 0.1)]
    evap: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// 0: random start, 1: random then fixed, 2: one ant per job.
    #[arg(long, default_value_t = 0)]
    init: i64,
    /// 0: uniform deposit, 1: positional deposit.
    #[arg(long, default_value_t = 0)]
    inc: i64,
    #[arg(long, default_value_t = 1.0)]
    pheromone_init: f64,
    #[arg(long, default_value_t = 1.0)]
    pheromone_floor: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the Gantt chart of the best schedule.
    #[arg(long)]
    gantt: bool,
    /// Write the best schedule as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the convergence trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

impl SolveArgs {
    fn params(&self) -> anyhow::Result<AcoParams> {
        let params = AcoParams {
            iterations: self.iterations,
            n_ants: self.ants,
            elitism: self.elitism,
            alpha: self.alpha,
            beta: self.beta,
            evaporation: self.evap,
            q: self.q,
            init_mode: InitMode::try_from(self.init)?,
            inc_mode: IncMode::try_from(self.inc)?,
            pheromone_init: self.pheromone_init,
            pheromone_floor: self.pheromone_floor,
            seed: self.seed,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Exit code 1 for bad input, 2 for failures on our side.
enum Failure {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::User(e.into())
    }
}

fn internal(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Internal(e.into())
}

fn manifest(path: Option<&Path>) -> anyhow::Result<Manifest> {
    match path {
        Some(p) => Manifest::load(p).with_context(|| format!("loading manifest {}", p.display())),
        None => Ok(Manifest::bundled()),
    }
}

fn describe(inst: &Instance) -> String {
    format!(
        "instance: {} ({} jobs x {} machines, {} operations)",
        inst.name(),
        inst.n_jobs(),
        inst.n_machines(),
        inst.total_ops()
    )
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let params = args.params()?;
    let inst = load_instance(&args.instance)?;
    let manifest = manifest(args.manifest.as_deref())?;
    let result = run_colony(&inst, &params)?;
    let schedule = decode(&inst, &result.best_path.sequence).map_err(internal)?;
    schedule.validate().map_err(|v| internal(anyhow!("solver produced an invalid schedule: {v}")))?;

    println!("{}", describe(&inst));
    println!(
        "params: iterations={} ants={} elitism={} alpha={} beta={} evap={} q={} init={} inc={} seed={}",
        params.iterations,
        params.effective_ants(&inst),
        if params.elitism { "global-best reinforcement (weight 1)" } else { "off" },
        params.alpha,
        params.beta,
        params.evaporation,
        params.q,
        params.init_mode as u8,
        params.inc_mode as u8,
        params.seed
    );
    let best = result.best_path.makespan;
    println!("best makespan: {best}");
    match manifest.optimum(inst.name()) {
        Some(opt) if opt > 0 => {
            let gap = 100.0 * (f64::from(best) - f64::from(opt)) / f64::from(opt);
            println!("optimum: {opt} (gap {gap:.2}%)");
        }
        Some(opt) => println!("optimum: {opt}"),
        None => println!("optimum: unknown"),
    }
    if args.gantt {
        println!("{}", schedule.render_gantt());
    }
    if let Some(path) = &args.json {
        std::fs::write(path, schedule.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))
            .map_err(internal)?;
    }
    if let Some(path) = &args.trace {
        std::fs::write(path, trace_csv(&result.best_makespan_per_iteration))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(internal)?;
    }
    Ok(())
}

fn validate(instance: &Path, schedule: &Path) -> Result<(), Failure> {
    let inst = load_instance(instance)?;
    let text = std::fs::read_to_string(schedule).with_context(|| format!("reading {}", schedule.display()))?;
    let schedule = Schedule::from_json(&inst, &text)?;
    match schedule.validate() {
        Ok(()) => {
            println!("valid, makespan={}", schedule.makespan());
            Ok(())
        }
        Err(v) => Err(anyhow!("invalid: {v}").into()),
    }
}

fn oracle(instance: &Path, cap: u128, prune: bool, gantt: bool) -> Result<(), Failure> {
    let inst = load_instance(instance)?;
    let result = if prune { pruned_optimum(&inst, cap)? } else { exhaustive_optimum(&inst, cap)? };
    println!("{}", describe(&inst));
    println!("optimum: {}", result.optimum);
    println!("sequences decoded: {}{}", result.n_sequences, if prune { " (pruned)" } else { "" });
    if gantt {
        println!("{}", decode(&inst, &result.optimal_sequence).map_err(internal)?.render_gantt());
    }
    Ok(())
}

fn bench(
    configs: &[PathBuf],
    out: Option<&Path>,
    traces: Option<PathBuf>,
    workers: Option<usize>,
    manifest_path: Option<&Path>,
) -> Result<(), Failure> {
    let options = SweepOptions { workers, manifest: manifest(manifest_path)?, trace_dir: traces };
    let mut report = SweepReport::default();
    for path in configs {
        match ExperimentConfig::load(path) {
            Ok(config) => report.rows.extend(sweep(std::slice::from_ref(&config), &options).rows),
            Err(e) => report.rows.push(SweepRow::failed(path.display().to_string(), e)),
        }
    }
    print!("{}", report.summary());
    if let Some(out) = out {
        std::fs::write(out, report.to_csv())
            .with_context(|| format!("writing {}", out.display()))
            .map_err(internal)?;
    }
    if report.failures() == report.rows.len() {
        return Err(anyhow!("all {} configs failed", report.rows.len()).into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Validate { instance, schedule } => validate(&instance, &schedule),
        Command::Oracle { instance, cap, prune, gantt } => oracle(&instance, cap, prune, gantt),
        Command::Bench { configs, out, traces, workers, manifest } => {
            bench(&configs, out.as_deref(), traces, workers, manifest.as_deref())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
