//! Monte Carlo experiments: configuration, parallel runs, statistics and
//! export.

mod config;
mod export;
mod run;
mod stats;

pub use config::{ExperimentConfig, Family, Format, ProjectionSet};
pub use export::{export, read_csv_records, render, to_csv, to_json, CSV_COLUMNS};
pub use run::{
    bound_target, run_experiment, run_experiment_with_threads, thread_cap, CheckFailure,
    RunOutput, TrialError, TrialRecord, SUBSET_STREAM, THREADS_ENV,
};
pub use stats::{summarize, SummaryStats, Verdict, FAIL_MARGIN_SE, MIN_TRIALS_FOR_VERDICT};
