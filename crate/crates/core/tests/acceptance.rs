//! Acceptance criteria, one verdict line each. Parts that need the real
//! Jureczko corpus read it from `JURECZKO_DIR` (default `data/jureczko` at
//! the workspace root) and fail when it is missing.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cpdq::cleaner::{clean, clean_corpus, clean_oracle, clean_oracle_ordered, StepOrder, DEFAULT_ORACLE_BOUND};
use cpdq::data::{load_corpus, Case, Corpus, Dataset, Label, MetricVector, METRIC_COUNT};
use cpdq::evaluation::{auc, auc_trapezoid, f_measure, ConfusionMatrix};
use cpdq::harness::{emit_reports, run_experiment_on, ExperimentConfig, Metric, ReportFormat, TargetSpec};
use cpdq::learners::LearnerKind;
use cpdq::matrix::Matrix;
use cpdq::quality::{corpus_quality_report, within_quality};
use cpdq::reference;
use cpdq::selection::{burak_filter, kmeans, peters_filter, peters_trace, DistanceSpace, FeatureSpace, FilterKind};
use cpdq::synthetic::three_project_corpus;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZERO_PROBLEM: [&str; 11] = [
    "berek",
    "ckjm",
    "forrest0.6",
    "intercafe",
    "log4j1.0",
    "log4j1.1",
    "pdftranslator",
    "skarbonka",
    "sklebagd",
    "szybkafucha",
    "wspomaganiepi",
];

/// Outcome of one check inside a criterion.
struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check {
        ok,
        detail: detail.into(),
    }
}

fn corpus_dir() -> PathBuf {
    std::env::var_os("JURECZKO_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            let crate_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
            crate_dir.ancestors().nth(2).unwrap_or(crate_dir).join("data/jureczko")
        })
}

/// The real corpus and its load time, loaded once.
fn real_corpus() -> Result<&'static (Corpus, Duration), String> {
    static CORPUS: OnceLock<Result<(Corpus, Duration), String>> = OnceLock::new();
    CORPUS
        .get_or_init(|| {
            let dir = corpus_dir();
            let start = Instant::now();
            let corpus = load_corpus(&dir, None)
                .map_err(|e| format!("real corpus unavailable at {} ({e}); set JURECZKO_DIR", dir.display()))?;
            if corpus.len() != reference::DATASETS.len() {
                return Err(format!(
                    "{} holds {} datasets, expected {}",
                    dir.display(),
                    corpus.len(),
                    reference::DATASETS.len()
                ));
            }
            Ok((corpus, start.elapsed()))
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn real_check(f: impl FnOnce(&Corpus, Duration) -> Check) -> Check {
    match real_corpus() {
        Ok((c, t)) => f(c, *t),
        Err(e) => check(false, e.clone()),
    }
}

fn without_prop(corpus: &Corpus) -> Corpus {
    Corpus::new(corpus.datasets().iter().filter(|d| d.project != "prop").cloned().collect()).unwrap()
}

/// Random dataset with collisions: a tiny value domain in half the cases,
/// and several textual spellings of each value.
fn colliding_dataset(rng: &mut ChaCha8Rng, max_cases: usize) -> Dataset {
    let n = rng.gen_range(1..=max_cases);
    let domain = if rng.gen_bool(0.5) { 3 } else { 400 };
    let base: Vec<(Vec<u32>, u64)> = (0..rng.gen_range(1..=n))
        .map(|_| ((0..METRIC_COUNT).map(|_| rng.gen_range(0..domain)).collect(), rng.gen_range(0..3)))
        .collect();
    let cases = (0..n)
        .map(|i| {
            // later rows repeat earlier ones, sometimes with another label
            let (values, mut bugs) = base[rng.gen_range(0..base.len())].clone();
            if rng.gen_bool(0.2) {
                bugs = u64::from(bugs == 0);
            }
            let cells: Vec<String> = values
                .iter()
                .map(|v| match rng.gen_range(0..3) {
                    0 => format!("{v}"),
                    1 => format!("{v}.0"),
                    _ => format!("{v}.00"),
                })
                .collect();
            Case::new(format!("C{i}"), MetricVector::parse(&cells).unwrap(), bugs)
        })
        .collect();
    Dataset::new("rand1", cases)
}

fn unique_metrics(d: &Dataset) -> bool {
    let mut seen = HashSet::new();
    d.cases.iter().all(|c| seen.insert(&c.metrics))
}

fn criterion_1() -> Vec<Check> {
    let published = reference::DATASETS
        .iter()
        .filter(|d| d.cases != d.cleaned_cases + d.deleted_cases)
        .count();
    let ant = reference::dataset("ant1.7").unwrap();
    let prop2 = reference::dataset("prop2").unwrap();
    let spot = (ant.cases, ant.cleaned_cases, ant.deleted_cases) == (745, 724, 21)
        && (prop2.cases, prop2.cleaned_cases, prop2.deleted_cases) == (23014, 12115, 10899);
    let synthetic = {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..200).all(|_| {
            let d = colliding_dataset(&mut rng, 200);
            let r = clean(&d);
            d.case_count() == r.cleaned.case_count() + r.removed_total
        })
    };
    vec![
        check(published == 0 && spot, format!("published tables: {published} rows break the identity; spot checks {}", if spot { "hold" } else { "differ" })),
        check(synthetic, "identity on 200 synthetic datasets"),
        real_check(|corpus, load| {
            let small = without_prop(corpus);
            let t = Instant::now();
            let cleaned_small = clean_corpus(&small);
            let small_time = load + t.elapsed();
            let t = Instant::now();
            let cleaned = match clean_corpus(corpus) {
                Ok(c) => c,
                Err(e) => return check(false, format!("cleaning failed: {e}")),
            };
            let full_time = load + t.elapsed();
            let mut bad = Vec::new();
            for r in &cleaned.results {
                let name = &r.cleaned.name;
                let p = reference::dataset(name);
                let identity = r.original_case_count == r.cleaned.case_count() + r.removed_total;
                let table1 = p.is_some_and(|p| p.cases == r.original_case_count);
                if !identity || !table1 {
                    bad.push(name.clone());
                }
            }
            let spot = |name: &str, want: (usize, usize, usize)| {
                cleaned
                    .results
                    .iter()
                    .find(|r| r.cleaned.name == name)
                    .is_some_and(|r| (r.original_case_count, r.cleaned.case_count(), r.removed_total) == want)
            };
            let spots = spot("ant1.7", (745, 724, 21)) && spot("prop2", (23014, 12115, 10899));
            let fast = cleaned_small.is_ok() && small_time < Duration::from_secs(120) && full_time < Duration::from_secs(600);
            check(
                bad.is_empty() && spots && fast,
                format!(
                    "real corpus: {} mismatched datasets {:?}, spot checks {}, {:.1}s without prop, {:.1}s with",
                    bad.len(),
                    bad,
                    if spots { "hold" } else { "FAIL" },
                    small_time.as_secs_f64(),
                    full_time.as_secs_f64()
                ),
            )
        }),
    ]
}

fn criterion_2() -> Vec<Check> {
    let published_ok = ZERO_PROBLEM.iter().all(|n| {
        let d = reference::dataset(n).unwrap();
        d.inconsistent == 0 && d.identical == 0 && d.deleted_cases == 0
    });
    vec![
        check(published_ok, "published rows have #Inc = #Ide = #delCase = 0"),
        real_check(|corpus, _| {
            let mut bad = Vec::new();
            for name in ZERO_PROBLEM {
                match corpus.get(name) {
                    Some(d) => {
                        let r = clean(d);
                        let q = within_quality(d);
                        if r.removed_total != 0 || &r.cleaned != d || q.identical_case_count != 0 || q.inconsistent_case_count != 0 {
                            bad.push(name);
                        }
                    }
                    None => bad.push(name),
                }
            }
            check(bad.is_empty(), format!("real corpus: {} of 11 datasets change {:?}", bad.len(), bad))
        }),
    ]
}

fn criterion_3() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut divergent = 0;
    let mut with_problems = 0;
    for _ in 0..1000 {
        let d = colliding_dataset(&mut rng, 200);
        let fast = clean(&d);
        let oracle = clean_oracle(&d, DEFAULT_ORACLE_BOUND).unwrap();
        if fast.removed_total > 0 {
            with_problems += 1;
        }
        if fast != oracle {
            divergent += 1;
        }
    }
    vec![check(
        divergent == 0 && with_problems > 500,
        format!("1000 random datasets ({with_problems} with problems): {divergent} divergences"),
    )]
}

fn clean_properties(d: &Dataset) -> bool {
    let once = clean(d);
    let twice = clean(&once.cleaned);
    twice.removed_total == 0 && twice.cleaned == once.cleaned && unique_metrics(&once.cleaned)
}

fn criterion_4() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let synthetic = (0..500).all(|_| clean_properties(&colliding_dataset(&mut rng, 200)));
    let x = |bugs: u64| Case::new("X", MetricVector::from_f64s(&[1.0; METRIC_COUNT]).unwrap(), bugs);
    let fixture = Dataset::new("order1", vec![x(1), x(1), x(0)]);
    let dedup_first = clean_oracle_ordered(&fixture, 10, StepOrder::DedupFirst).unwrap();
    let inconsistent_first = clean_oracle_ordered(&fixture, 10, StepOrder::InconsistentFirst).unwrap();
    let order_ok = dedup_first.cleaned.case_count() == 0
        && inconsistent_first.cleaned.case_count() == 1
        && inconsistent_first.cleaned.cases[0].label == Label::Defective
        && clean(&fixture) == dedup_first;
    vec![
        check(synthetic, "idempotence and uniqueness on 500 synthetic datasets"),
        check(
            order_ok,
            format!(
                "{{X+,X+,X-}}: dedup-first keeps {}, inconsistent-first keeps {}",
                dedup_first.cleaned.case_count(),
                inconsistent_first.cleaned.case_count()
            ),
        ),
        real_check(|corpus, _| {
            let bad: Vec<&str> = corpus
                .datasets()
                .iter()
                .filter(|d| !clean_properties(d))
                .map(|d| d.name.as_str())
                .collect();
            check(bad.is_empty(), format!("real corpus: {} datasets fail {:?}", bad.len(), bad))
        }),
    ]
}

fn criterion_5() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut worst_inverse: f64 = 0.0;
    for i in 0..1000 {
        let n = rng.gen_range(2..300);
        let mut truth: Vec<Label> = (0..n).map(|_| Label::from_bug_count(rng.gen_range(0..2))).collect();
        truth[0] = Label::Defective;
        truth[1] = Label::DefectFree;
        // even iterations are tie-heavy, odd ones tie-free
        let scores: Vec<f64> = if i % 2 == 0 {
            (0..n).map(|_| f64::from(rng.gen_range(0..10u32)) / 10.0).collect()
        } else {
            (0..n).map(|j| (j as f64 + rng.gen::<f64>() * 0.5) / n as f64).collect()
        };
        let rank = auc(&truth, &scores).unwrap().unwrap();
        let trap = auc_trapezoid(&truth, &scores).unwrap().unwrap();
        worst = worst.max((rank - trap).abs());
        if i % 2 == 1 {
            let inverted: Vec<f64> = scores.iter().map(|s| -s).collect();
            let inv = auc(&truth, &inverted).unwrap().unwrap();
            worst_inverse = worst_inverse.max((inv - (1.0 - rank)).abs());
        }
    }
    // (tp, fp, tn, fn, hand-computed F)
    let fixtures: [(usize, usize, usize, usize, f64); 12] = [
        (2, 1, 0, 1, 2.0 / 3.0),
        (0, 0, 10, 0, 0.0),
        (1, 0, 5, 1, 2.0 / 3.0),
        (5, 0, 5, 0, 1.0),
        (0, 4, 4, 3, 0.0),
        (3, 1, 2, 3, 0.6),
        (1, 9, 0, 0, 2.0 / 11.0),
        (4, 0, 0, 12, 0.4),
        (10, 10, 10, 10, 0.5),
        (7, 3, 1, 0, 14.0 / 17.0),
        (1, 1, 1, 1, 0.5),
        (6, 2, 9, 4, 2.0 / 3.0),
    ];
    let f_bad: Vec<usize> = fixtures
        .iter()
        .enumerate()
        .filter(|(_, &(tp, fp, tn, fn_, want))| f_measure(&ConfusionMatrix { tp, fp, tn, fn_ }) != want)
        .map(|(i, _)| i)
        .collect();
    vec![
        check(worst <= 1e-9, format!("rank vs trapezoid AUC on 1000 score sets: max diff {worst:e}")),
        check(worst_inverse <= 1e-12, format!("auc(inverted) = 1 - auc: max diff {worst_inverse:e}")),
        check(f_bad.is_empty(), format!("F-Measure: {} fixtures, mismatches {:?}", fixtures.len(), f_bad)),
    ]
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, domain: u32) -> Matrix<f64> {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| (0..METRIC_COUNT).map(|_| f64::from(rng.gen_range(0..domain))).collect())
        .collect();
    Matrix::from_rows(&data).unwrap()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    s
}

/// Brute-force nearest neighbor union, ties by index.
fn burak_oracle(pool: &Matrix<f64>, target: &Matrix<f64>, k: usize) -> Vec<usize> {
    let mut chosen = vec![false; pool.nrows()];
    for t in 0..target.nrows() {
        let mut d: Vec<(f64, usize)> = (0..pool.nrows()).map(|p| (dist2(pool.row(p), target.row(t)), p)).collect();
        d.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(_, p) in d.iter().take(k) {
            chosen[p] = true;
        }
    }
    (0..pool.nrows()).filter(|&p| chosen[p]).collect()
}

fn argmin(candidates: impl Iterator<Item = (f64, usize)>) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for (d, i) in candidates {
        if best.is_none_or(|b| d < b.0 || (d == b.0 && i < b.1)) {
            best = Some((d, i));
        }
    }
    best.map(|b| b.1)
}

fn criterion_6() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut burak_bad = 0;
    for i in 0..60 {
        let pool_n = rng.gen_range(1..=450);
        let target_n = rng.gen_range(1..=50);
        // small domains force distance ties
        let domain = if i % 2 == 0 { 2 } else { 50 };
        let pool = random_matrix(&mut rng, pool_n, domain);
        let target = random_matrix(&mut rng, target_n, domain);
        let k = rng.gen_range(1..=15);
        let space = if i % 3 == 0 { DistanceSpace::Normalized } else { DistanceSpace::Raw };
        let s = FeatureSpace::from_matrices(pool, target, space);
        let got = burak_filter(&s.pool, &s.target, k).unwrap().selected;
        if got != burak_oracle(&s.pool, &s.target, k) {
            burak_bad += 1;
        }
    }

    let mut peters_bad = Vec::new();
    for i in 0..40 {
        let pool_n = rng.gen_range(1..=150);
        let target_n = rng.gen_range(1..=50);
        let pool = random_matrix(&mut rng, pool_n, 10);
        let target = random_matrix(&mut rng, target_n, 10);
        let k = rng.gen_range(1..=((pool_n + target_n) / 3).max(1));
        let seed = rng.gen();
        let trace = peters_trace(&pool, &target, k, seed).unwrap();
        let combined = pool.stack(&target).unwrap();
        let a = &trace.clustering.assignments;
        let fix = (0..combined.nrows()).all(|p| {
            argmin(trace.clustering.centroids.iter().enumerate().map(|(c, m)| (dist2(combined.row(p), m), c))) == Some(a[p])
        });
        let sizes_ok = trace.clustering.cluster_sizes().iter().all(|&s| s > 0);
        let retained: Vec<usize> = {
            let mut r: Vec<usize> = a[pool_n..].to_vec();
            r.sort_unstable();
            r.dedup();
            r
        };
        let labels: Vec<Option<usize>> = (0..pool_n)
            .map(|p| {
                argmin((0..target_n).filter(|&t| a[pool_n + t] == a[p]).map(|t| (dist2(pool.row(p), target.row(t)), t)))
            })
            .collect();
        let picks: Vec<Option<usize>> = (0..target_n)
            .map(|t| argmin((0..pool_n).filter(|&p| labels[p] == Some(t)).map(|p| (dist2(pool.row(p), target.row(t)), p))))
            .collect();
        let selection = peters_filter(&pool, &target, Some(k), seed, 10).unwrap();
        let mut expected: Vec<usize> = picks.iter().flatten().copied().collect();
        expected.sort_unstable();
        expected.dedup();
        let selection_ok = if labels.iter().all(Option::is_none) {
            selection.selected == burak_oracle(&pool, &target, 10) && !selection.params.warnings.is_empty()
        } else {
            selection.selected == expected
                && selection.len() <= target_n
                && selection.selected.iter().all(|&p| retained.contains(&a[p]))
        };
        if !(fix && sizes_ok && trace.retained == retained && trace.labels == labels && trace.picks == picks && selection_ok) {
            peters_bad.push(i);
        }
    }

    let mut objective_bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..200);
        let points = random_matrix(&mut rng, n, 100);
        let k = rng.gen_range(1..=n.min(12));
        let c = kmeans(&points, k, rng.gen()).unwrap();
        let increasing = c.objective_trace.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-12));
        let recomputed: f64 = (0..n).map(|p| dist2(points.row(p), &c.centroids[c.assignments[p]])).sum();
        let last = *c.objective_trace.last().unwrap();
        if increasing || (recomputed - last).abs() > 1e-9 * last.max(1.0) {
            objective_bad += 1;
        }
    }
    vec![
        check(burak_bad == 0, format!("burak vs brute force on 60 fixtures: {burak_bad} mismatches")),
        check(peters_bad.is_empty(), format!("peters trace on 40 fixtures: failures {peters_bad:?}")),
        check(objective_bad == 0, format!("k-means objective on 100 runs: {objective_bad} violations")),
    ]
}

/// Per learner: (learner, original F, change rate).
type BurakRows = Vec<(LearnerKind, Option<f64>, Option<f64>)>;

fn burak_change(inject: bool) -> (BurakRows, Vec<Option<f64>>) {
    let corpus = three_project_corpus(inject, 7).unwrap();
    let mut cfg = ExperimentConfig::new("synthetic");
    cfg.seed = 7;
    cfg.targets = TargetSpec::List(vec!["alpha2".into()]);
    cfg.forest_trees = 20;
    let out = run_experiment_on(&corpus, &cfg).unwrap();
    let burak = out
        .results
        .iter()
        .filter(|r| r.filter == FilterKind::Burak && r.metric == Metric::FMeasure)
        .map(|r| (r.learner, r.original, r.rate_percent()))
        .collect();
    (burak, out.results.iter().map(|r| r.rate_percent()).collect())
}

fn criterion_7() -> Vec<Check> {
    let (injected, _) = burak_change(true);
    let (_, plain) = burak_change(false);
    let moved = injected
        .iter()
        .filter(|(_, orig, rate)| orig.is_some_and(|o| o > 0.0) && rate.is_some_and(|r| r != 0.0))
        .count();
    let described: Vec<String> = injected
        .iter()
        .map(|(l, o, r)| {
            let rate = r.map_or("n/a".to_string(), |r| format!("{r:+.1}%"));
            format!("{}: F {:.3}, change {rate}", l.name(), o.unwrap_or(f64::NAN))
        })
        .collect();
    let zero = plain.iter().all(|r| *r == Some(0.0));
    vec![
        check(moved > 0, format!("injected corpus, BurakF F-change: {}", described.join(", "))),
        check(zero, format!("clean corpus: all {} change rates are 0", plain.len())),
        real_check(|corpus, _| {
            let mut cfg = ExperimentConfig::new(corpus_dir());
            cfg.seed = 42;
            cfg.exclude = vec!["prop*".into()];
            cfg.sample_cap = Some(2000);
            let run = |dir: &std::path::Path| -> Result<(), String> {
                let out = run_experiment_on(corpus, &cfg).map_err(|e| e.to_string())?;
                emit_reports(&out, dir, &ReportFormat::ALL).map_err(|e| e.to_string())?;
                Ok(())
            };
            let tmp = std::env::temp_dir().join(format!("cpdq-acceptance-{}", std::process::id()));
            let (a, b) = (tmp.join("a"), tmp.join("b"));
            let start = Instant::now();
            if let Err(e) = run(&a) {
                return check(false, format!("desk-scale run failed: {e}"));
            }
            let once = start.elapsed();
            if let Err(e) = run(&b) {
                return check(false, format!("second run failed: {e}"));
            }
            let same = ["fmeasure_change.csv", "auc_change.csv", "results.json"]
                .iter()
                .all(|f| std::fs::read(a.join(f)).ok() == std::fs::read(b.join(f)).ok());
            let _ = std::fs::remove_dir_all(&tmp);
            check(
                same && once < Duration::from_secs(1800),
                format!("desk-scale run {:.0}s, byte-identical rerun: {same}", once.as_secs_f64()),
            )
        }),
    ]
}

fn criterion_8() -> Vec<Check> {
    let synthetic = {
        let corpus = three_project_corpus(true, 8).unwrap();
        let md = corpus_quality_report(&corpus).to_markdown(true);
        corpus.datasets().iter().all(|d| md.contains(&format!("| {} |", d.name)))
    };
    vec![
        check(synthetic, "table layout on a synthetic corpus"),
        real_check(|corpus, _| {
            let report = corpus_quality_report(corpus);
            let zero_rows = ZERO_PROBLEM.iter().all(|n| {
                report
                    .within
                    .iter()
                    .find(|w| w.dataset_name == *n)
                    .is_some_and(|w| w.identical_case_count == 0 && w.inconsistent_case_count == 0)
            });
            let forrest = report
                .cross
                .iter()
                .find(|c| c.release1 == "forrest0.7" && c.release2 == "forrest0.8")
                .map(|c| (c.identical_pair_count, c.inconsistent_pair_count));
            let md = report.to_markdown(true);
            let flagged = md.matches('†').count();
            let mut detail = String::new();
            let _ = write!(
                detail,
                "{} dataset rows, {} pair rows, zero rows exact: {zero_rows}, forrest0.7xforrest0.8 = {forrest:?}, {flagged} cells flagged",
                report.within.len(),
                report.cross.len()
            );
            check(
                zero_rows && forrest == Some((18, 0)) && report.within.len() == 65 && report.cross.len() == reference::PAIRS.len(),
                detail,
            )
        }),
    ]
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Vec<Check>);
    let criteria: [Criterion; 8] = [
        ("size identity", criterion_1),
        ("zero-problem passthrough", criterion_2),
        ("oracle equivalence", criterion_3),
        ("cleaning properties", criterion_4),
        ("metric correctness", criterion_5),
        ("filter correctness", criterion_6),
        ("experiment sensitivity", criterion_7),
        ("quality table regeneration", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let ok = checks.iter().all(|c| c.ok);
        failed += usize::from(!ok);
        let parts: Vec<String> = checks
            .iter()
            .map(|c| format!("{}{}", if c.ok { "" } else { "FAILED " }, c.detail))
            .collect();
        println!(
            "criterion {} {name}: {} [{:.1}s] {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            parts.join("; ")
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
