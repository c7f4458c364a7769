//! Original-versus-cleaned experiment over every requested target, filter
//! and learner.

use std::hash::Hasher;
use std::time::Instant;

use fnv::FnvHasher;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::cleaner::clean_corpus;
use crate::data::{load_corpus, Corpus, Dataset, Label};
use crate::error::{Error, Result};
use crate::evaluation::{change_rate, evaluate, ChangeRate};
use crate::learners::{train, ForestConfig, LearnerConfig, LearnerKind, TrainingMatrix};
use crate::matrix::Matrix;
use crate::selection::{
    build_pool, global_filter, select_in_space, DistanceSpace, FeatureSpace, FilterConfig, FilterKind,
    SelectionParams, SourcePool,
};

/// Environment variable overriding the worker thread count.
pub const WORKERS_ENV: &str = "CPDQ_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Original,
    Cleaned,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Cleaned => "cleaned",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    FMeasure,
    Auc,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::FMeasure, Metric::Auc];

    pub fn name(self) -> &'static str {
        match self {
            Metric::FMeasure => "f_measure",
            Metric::Auc => "auc",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Metric::FMeasure => "F-Measure",
            Metric::Auc => "AUC",
        }
    }
}

/// How one variant of one combination was run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VariantInfo {
    pub pool_cases: usize,
    pub training_cases: usize,
    pub training_defective: usize,
    pub test_cases: usize,
    pub test_defective: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection_seed: Option<u64>,
    pub learner_seed: u64,
    pub selection: SelectionParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub original: VariantInfo,
    pub cleaned: VariantInfo,
}

/// One (target, filter, learner, metric) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub target: String,
    pub filter: FilterKind,
    pub learner: LearnerKind,
    pub metric: Metric,
    pub original: Option<f64>,
    pub cleaned: Option<f64>,
    /// `None` when a score is missing; see `skipped`.
    pub change: Option<ChangeRate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub provenance: Provenance,
}

impl ExperimentResult {
    /// The rate that goes into report tables; `None` renders as `n/a`.
    pub fn rate_percent(&self) -> Option<f64> {
        self.change.and_then(|c| c.rate_percent)
    }
}

/// A dataset reduced by `sample_cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub dataset: String,
    pub original_cases: usize,
    pub kept_cases: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingEntry {
    pub target: String,
    pub variant: Variant,
    pub filter: FilterKind,
    pub selection_secs: f64,
    /// Training plus prediction, per learner in config order.
    pub learner_secs: Vec<(LearnerKind, f64)>,
}

/// Wall-clock timings; kept apart from results so those stay reproducible.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub workers: usize,
    pub load_secs: f64,
    pub clean_secs: f64,
    pub run_secs: f64,
    pub entries: Vec<TimingEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub targets: Vec<String>,
    pub sampled: Vec<SampleRecord>,
    pub results: Vec<ExperimentResult>,
    #[serde(skip)]
    pub timings: Timings,
}

/// Seed for one keyed random stream: FNV-1a over the base seed and the
/// key parts, each part terminated by a 0xff byte.
///
/// Keys leave out the variant so both variants of a combination draw the
/// same numbers and differ only by their data.
pub fn derive_seed(seed: u64, parts: &[&str]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(&seed.to_le_bytes());
    for p in parts {
        h.write(p.as_bytes());
        h.write_u8(0xff);
    }
    h.finish()
}

/// Keep at most `cap` cases, preserving the class ratio (each present class
/// keeps at least one case) and the original case order.
pub fn stratified_subsample(dataset: &Dataset, cap: usize, seed: u64) -> Dataset {
    let n = dataset.case_count();
    if n <= cap {
        return dataset.clone();
    }
    let by_class: [Vec<usize>; 2] = [Label::DefectFree, Label::Defective].map(|l| {
        (0..n).filter(|&i| dataset.cases[i].label == l).collect()
    });
    let mut quota = by_class.clone().map(|v| {
        let q = (cap as f64 * v.len() as f64 / n as f64).round() as usize;
        q.clamp(usize::from(!v.is_empty()), v.len())
    });
    // fix rounding drift on the larger class
    let big = usize::from(by_class[1].len() > by_class[0].len());
    let other = quota[1 - big];
    quota[big] = cap.saturating_sub(other).min(by_class[big].len());
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &["sample", &dataset.name]));
    let mut keep: Vec<usize> = Vec::with_capacity(cap);
    for c in 0..2 {
        keep.extend(sample(&mut rng, by_class[c].len(), quota[c]).into_iter().map(|i| by_class[c][i]));
    }
    keep.sort_unstable();
    dataset.with_cases(keep.into_iter().map(|i| dataset.cases[i].clone()).collect())
}

/// Load the configured corpus and run the experiment on it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let start = Instant::now();
    let corpus = load_corpus(&config.corpus_dir, None)?;
    let load_secs = start.elapsed().as_secs_f64();
    let mut out = run_experiment_on(&corpus, config)?;
    out.timings.load_secs = load_secs;
    Ok(out)
}

/// Run on an in-memory corpus, on the worker count from [`WORKERS_ENV`]
/// when set.
pub fn run_experiment_on(corpus: &Corpus, config: &ExperimentConfig) -> Result<ExperimentOutput> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let workers: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&w| w > 0)
                .ok_or_else(|| Error::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`")))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))?
                .install(|| run_inner(corpus, config))
        }
        Err(_) => run_inner(corpus, config),
    }
}

fn run_inner(corpus: &Corpus, config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let targets = config.resolve_targets(corpus.datasets().iter().map(|d| d.name.as_str()))?;
    let mut timings = Timings {
        workers: rayon::current_num_threads(),
        ..Timings::default()
    };

    let mut sampled = Vec::new();
    let owned;
    let original = match config.sample_cap {
        Some(cap) => {
            let datasets: Vec<Dataset> = corpus
                .datasets()
                .par_iter()
                .map(|d| stratified_subsample(d, cap, config.seed))
                .collect();
            for (before, after) in corpus.datasets().iter().zip(&datasets) {
                if after.case_count() < before.case_count() {
                    sampled.push(SampleRecord {
                        dataset: before.name.clone(),
                        original_cases: before.case_count(),
                        kept_cases: after.case_count(),
                    });
                }
            }
            owned = Corpus::new(datasets)?;
            &owned
        }
        None => corpus,
    };

    let t = Instant::now();
    let cleaned = clean_corpus(original)?;
    cleaned.verify()?;
    timings.clean_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let per_target: Vec<(Vec<ExperimentResult>, Vec<TimingEntry>)> = targets
        .par_iter()
        .map(|target| run_target(target, original, &cleaned.corpus, config))
        .collect::<Result<_>>()?;
    timings.run_secs = t.elapsed().as_secs_f64();

    let mut results = Vec::new();
    for (r, e) in per_target {
        results.extend(r);
        timings.entries.extend(e);
    }
    Ok(ExperimentOutput {
        config: config.clone(),
        targets,
        sampled,
        results,
        timings,
    })
}

/// Scores of one (filter, learner) under one variant.
#[derive(Debug, Clone, Default)]
struct Outcome {
    info: VariantInfo,
    f_measure: Option<f64>,
    auc: Option<f64>,
    note: Option<String>,
}

struct Prepared<'a> {
    pool: SourcePool<'a>,
    test: &'a Dataset,
    test_rows: Matrix<f64>,
    space: Option<FeatureSpace<f64>>,
}

fn prepare<'a>(
    target: &str,
    pool_corpus: &'a Corpus,
    test: &'a Dataset,
    config: &ExperimentConfig,
) -> std::result::Result<Prepared<'a>, String> {
    let pool = build_pool(pool_corpus, target, config.pool_mode).map_err(|e| e.to_string())?;
    if test.is_empty() {
        return Err("test set is empty".into());
    }
    let mut test_rows = Matrix::empty(crate::data::METRIC_COUNT);
    for c in &test.cases {
        test_rows
            .push_row(&c.metrics.to_scalars::<f64>())
            .map_err(|e| e.to_string())?;
    }
    let space = config.filters.iter().any(|&f| f != FilterKind::Global).then(|| {
        let s = if config.normalization {
            DistanceSpace::Normalized
        } else {
            DistanceSpace::Raw
        };
        FeatureSpace::build(&pool, test, s)
    });
    Ok(Prepared {
        pool,
        test,
        test_rows,
        space,
    })
}

fn run_variant(
    target: &str,
    variant: Variant,
    pool_corpus: &Corpus,
    test: &Dataset,
    config: &ExperimentConfig,
    timings: &mut Vec<TimingEntry>,
) -> Result<Vec<Vec<Outcome>>> {
    let learner_config = LearnerConfig {
        forest: ForestConfig {
            trees: config.forest_trees,
            ..ForestConfig::default()
        },
        ..LearnerConfig::default()
    };
    let prepared = match prepare(target, pool_corpus, test, config) {
        Ok(p) => p,
        Err(reason) => {
            let note = Outcome {
                note: Some(format!("{}: {reason}", variant.name())),
                ..Outcome::default()
            };
            return Ok(vec![vec![note; config.learners.len()]; config.filters.len()]);
        }
    };
    let truth: Vec<Label> = prepared.test.cases.iter().map(|c| c.label).collect();
    let test_defective = truth.iter().filter(|l| l.is_defective()).count();

    let mut by_filter = Vec::with_capacity(config.filters.len());
    for &filter in &config.filters {
        let t = Instant::now();
        let selection_seed =
            (filter == FilterKind::Peters).then(|| derive_seed(config.seed, &[target, filter.name()]));
        let selection = match (&prepared.space, filter) {
            (_, FilterKind::Global) | (None, _) => {
                let mut s = global_filter(prepared.pool.len());
                s.params.normalized = config.normalization;
                s
            }
            (Some(space), kind) => {
                let fc = FilterConfig {
                    kind,
                    k: config.burak_k,
                    clusters: config.peters_clusters,
                    seed: selection_seed.unwrap_or(0),
                    space: if config.normalization {
                        DistanceSpace::Normalized
                    } else {
                        DistanceSpace::Raw
                    },
                };
                select_in_space(space, &fc)?
            }
        };
        let selection_secs = t.elapsed().as_secs_f64();
        let training = TrainingMatrix::<f64>::from_cases(
            selection.selected.iter().map(|&i| prepared.pool.cases[i].case),
        )?;
        let base_info = VariantInfo {
            pool_cases: prepared.pool.len(),
            training_cases: training.len(),
            training_defective: training.class_counts()[1],
            test_cases: truth.len(),
            test_defective,
            selection_seed,
            learner_seed: 0,
            selection: selection.params.clone(),
        };

        let mut outcomes = Vec::with_capacity(config.learners.len());
        let mut learner_secs = Vec::with_capacity(config.learners.len());
        for &learner in &config.learners {
            let t = Instant::now();
            let learner_seed = derive_seed(config.seed, &[target, filter.name(), learner.name()]);
            let model = train(learner, &training, &learner_config, learner_seed);
            let scores: Vec<f64> = prepared.test_rows.rows().map(|r| model.defect_probability(r)).collect();
            let eval = evaluate(&truth, &scores)?;
            learner_secs.push((learner, t.elapsed().as_secs_f64()));
            let note = eval
                .auc
                .is_none()
                .then(|| format!("{}: single-class test set, AUC undefined", variant.name()));
            outcomes.push(Outcome {
                info: VariantInfo {
                    learner_seed,
                    ..base_info.clone()
                },
                f_measure: Some(eval.f_measure),
                auc: eval.auc,
                note,
            });
        }
        timings.push(TimingEntry {
            target: target.to_string(),
            variant,
            filter,
            selection_secs,
            learner_secs,
        });
        by_filter.push(outcomes);
    }
    Ok(by_filter)
}

fn run_target(
    target: &str,
    original: &Corpus,
    cleaned: &Corpus,
    config: &ExperimentConfig,
) -> Result<(Vec<ExperimentResult>, Vec<TimingEntry>)> {
    let original_target = original
        .get(target)
        .ok_or_else(|| Error::Usage(format!("target `{target}` is not in the corpus")))?;
    let cleaned_target = if config.clean_pool_only {
        original_target
    } else {
        cleaned
            .get(target)
            .ok_or_else(|| Error::Invariant(format!("cleaned corpus lost `{target}`")))?
    };
    let mut timings = Vec::new();
    let orig = run_variant(target, Variant::Original, original, original_target, config, &mut timings)?;
    let clean = run_variant(target, Variant::Cleaned, cleaned, cleaned_target, config, &mut timings)?;

    let mut results = Vec::new();
    for (fi, &filter) in config.filters.iter().enumerate() {
        for (li, &learner) in config.learners.iter().enumerate() {
            let (o, c) = (&orig[fi][li], &clean[fi][li]);
            for metric in Metric::ALL {
                let pick = |x: &Outcome| match metric {
                    Metric::FMeasure => x.f_measure,
                    Metric::Auc => x.auc,
                };
                let (os, cs) = (pick(o), pick(c));
                let change = os.zip(cs).map(|(a, b)| change_rate(a, b));
                let skipped = if change.is_some() {
                    None
                } else {
                    let notes: Vec<&str> = [&o.note, &c.note].into_iter().flatten().map(String::as_str).collect();
                    Some(notes.join("; "))
                };
                if let Some(reason) = &skipped {
                    log::warn!("{target} {filter} {learner} {}: skipped ({reason})", metric.name());
                }
                results.push(ExperimentResult {
                    target: target.to_string(),
                    filter,
                    learner,
                    metric,
                    original: os,
                    cleaned: cs,
                    change,
                    skipped,
                    provenance: Provenance {
                        seed: config.seed,
                        original: o.info.clone(),
                        cleaned: c.info.clone(),
                    },
                });
            }
        }
    }
    Ok((results, timings))
}
