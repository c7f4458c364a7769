//! Comparative experiment: every target is predicted from a filtered
//! cross-project pool, once on the original corpus and once on the cleaned
//! corpus, and the two scores are turned into a change rate.

mod config;
mod report;
mod run;

pub use config::{ExperimentConfig, TargetSpec};
pub use report::{change_table, emit_reports, ChangeTable, ReportFormat, UNDEFINED};
pub use run::{
    derive_seed, run_experiment, run_experiment_on, stratified_subsample, ExperimentOutput, ExperimentResult,
    Metric, Provenance, SampleRecord, TimingEntry, Timings, Variant, VariantInfo, WORKERS_ENV,
};
