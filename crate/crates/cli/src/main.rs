use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use cpdq::cleaner::clean_corpus;
use cpdq::data::{load_corpus, write_dataset, Corpus};
use cpdq::harness::{emit_reports, run_experiment, ExperimentConfig, ReportFormat};
use cpdq::quality::corpus_quality_report;
use cpdq::selection::{build_pool, select, DistanceSpace, FilterConfig, FilterKind, PoolMode};
use serde_json::json;

/// Exit status when cleaning breaks one of its invariants.
const EXIT_INVARIANT: u8 = 2;

#[derive(Parser)]
#[command(name = "cpdq", version, about = "Defect dataset quality analysis, cleaning and cross-project prediction experiments")]
struct Cli {
    /// Log more (repeatable); RUST_LOG overrides.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count identical and inconsistent cases per dataset and across releases.
    Quality {
        #[arg(long)]
        corpus: PathBuf,
        /// Only these datasets (comma separated).
        #[arg(long, value_delimiter = ',')]
        datasets: Option<Vec<String>>,
        /// Include the cross-release pair table.
        #[arg(long)]
        pairs: bool,
        /// Write quality.md and quality.json here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove identical and inconsistent cases from every dataset.
    Clean {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',')]
        datasets: Option<Vec<String>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Select training data for one target from the other projects.
    Select {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "burak")]
        filter: FilterKind,
        /// Neighbors per target case (burak, and the peters fallback).
        #[arg(long, default_value_t = cpdq::selection::DEFAULT_NEIGHBORS)]
        k: usize,
        /// Cluster count for peters; default depends on the pool size.
        #[arg(long)]
        clusters: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Euclidean distance on raw metric values instead of min-max scaled ones.
        #[arg(long)]
        raw_distance: bool,
        /// Also admit older releases of the target's project.
        #[arg(long)]
        mixed: bool,
        /// Write the selection as JSON here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the original-versus-cleaned experiment described by a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Evaluate the cleaned variant on the original target.
        #[arg(long)]
        clean_pool_only: bool,
        /// Report formats (comma separated: csv, json, markdown).
        #[arg(long, value_delimiter = ',', default_value = "csv,json,markdown")]
        formats: Vec<ReportFormat>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(corpus: &Path, datasets: Option<&[String]>) -> Result<Corpus> {
    load_corpus(corpus, datasets).with_context(|| format!("loading corpus from {}", corpus.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Quality {
            corpus,
            datasets,
            pairs,
            out,
        } => {
            let corpus = load(&corpus, datasets.as_deref())?;
            let report = corpus_quality_report(&corpus);
            let markdown = report.to_markdown(pairs);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    write_file(&dir.join("quality.md"), &markdown)?;
                    write_file(&dir.join("quality.json"), &(report.to_json()? + "\n"))?;
                }
                None => print!("{markdown}"),
            }
        }
        Command::Clean { corpus, datasets, out } => {
            let corpus = load(&corpus, datasets.as_deref())?;
            let cleaned = clean_corpus(&corpus)?;
            if let Err(e) = cleaned.verify() {
                eprintln!("error: cleaning invariant violated: {e}");
                return Ok(ExitCode::from(EXIT_INVARIANT));
            }
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for d in cleaned.corpus.datasets() {
                let path = out.join(format!("{}.csv", d.name));
                let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_dataset(file, d).with_context(|| format!("writing {}", path.display()))?;
            }
            write_file(&out.join("clean_summary.md"), &cleaned.summary_markdown())?;
            let summary = serde_json::to_string_pretty(&cleaned.summary())? + "\n";
            write_file(&out.join("clean_summary.json"), &summary)?;
            let removed: usize = cleaned.results.iter().map(|r| r.removed_total).sum();
            eprintln!(
                "cleaned {} datasets, removed {removed} cases, wrote {}",
                cleaned.results.len(),
                out.display()
            );
        }
        Command::Select {
            corpus,
            target,
            filter,
            k,
            clusters,
            seed,
            raw_distance,
            mixed,
            out,
        } => {
            let corpus = load(&corpus, None)?;
            let mode = if mixed { PoolMode::Mixed } else { PoolMode::Strict };
            let pool = build_pool(&corpus, &target, mode)?;
            let target_data = corpus.get(&target).expect("pool built for an existing target");
            let config = FilterConfig {
                kind: filter,
                k,
                clusters,
                seed,
                space: if raw_distance {
                    DistanceSpace::Raw
                } else {
                    DistanceSpace::Normalized
                },
            };
            let selection = select::<f64>(&pool, target_data, &config)?;
            let selected: Vec<_> = selection
                .selected
                .iter()
                .map(|&i| {
                    let p = &pool.cases[i];
                    json!({
                        "pool_index": i,
                        "dataset": p.origin,
                        "row": p.origin_index,
                        "class": p.case.class_name,
                        "defective": p.case.label.is_defective(),
                    })
                })
                .collect();
            let doc = json!({
                "target": target,
                "filter": filter,
                "pool_mode": mode,
                "pool_size": pool.len(),
                "selected_count": selection.len(),
                "params": selection.params,
                "selected": selected,
            });
            emit(out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
        Command::Experiment {
            config,
            out,
            clean_pool_only,
            formats,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            cfg.clean_pool_only |= clean_pool_only;
            let output = run_experiment(&cfg)?;
            let files = emit_reports(&output, &out, &formats)?;
            let skipped = output.results.iter().filter(|r| r.skipped.is_some()).count();
            eprintln!(
                "{} targets, {} results ({skipped} skipped), {:.1}s; wrote {} files to {}",
                output.targets.len(),
                output.results.len(),
                output.timings.run_secs,
                files.len(),
                out.display()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
