//! Elitist ant colony optimization for the job shop scheduling problem.
//!
//! The solver walks a complete graph over all operations: at every step an ant
//! may pick the head of any unfinished job, and the partial schedule is built
//! incrementally with earliest-start placement. The crate also ships the
//! pieces needed to run and check experiments: an OR-Library instance parser,
//! a schedule decoder and validator, an exhaustive oracle for tiny instances
//! and a multi-execution benchmark harness.

pub mod colony;
pub mod harness;
pub mod instance;
pub mod manifest;
pub mod oracle;
pub mod schedule;
pub mod search;

pub use colony::{run_colony, AcoParams, AntPath, ColonyResult, IncMode, InitMode, PheromoneMatrix};
pub use harness::{compute_stats, run_experiment, sweep, ExperimentConfig, RunStats};
pub use instance::{load_instance, parse_instance, Instance, OpId, Operation, Time};
pub use manifest::Manifest;
pub use oracle::{exhaustive_optimum, OracleResult};
pub use schedule::{decode, Schedule, Violation};
pub use search::SearchState;
