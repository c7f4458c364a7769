//! Seeded synthetic datasets with controllable identical and inconsistent
//! cases, for tests and demonstrations without the real corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::{Case, Corpus, Dataset, MetricVector, METRIC_COUNT};
use crate::error::Result;

/// Label rule of [`random_dataset`]: defective when the first two metrics
/// sum above 100.
pub fn rule_is_defective(metrics: &[f64]) -> bool {
    metrics[0] + metrics[1] > 100.0
}

fn case(name: String, values: &[f64], defective: bool, rng: &mut impl Rng) -> Case {
    let bugs = if defective { rng.gen_range(1..4) } else { 0 };
    let metrics = MetricVector::from_f64s(values).expect("synthetic metrics are valid");
    Case::new(name, metrics, bugs)
}

/// `cases` rule-labelled cases with distinct metric rows. Metrics are
/// multiples of 0.25 in `[0, 100)`.
pub fn random_dataset(name: &str, cases: usize, rng: &mut impl Rng) -> Dataset {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(cases);
    while out.len() < cases {
        let values: Vec<f64> = (0..METRIC_COUNT).map(|_| f64::from(rng.gen_range(0u32..400)) / 4.0).collect();
        let key: Vec<u64> = values.iter().map(|v| v.to_bits()).collect();
        if !seen.insert(key) {
            continue;
        }
        let defective = rule_is_defective(&values);
        out.push(case(format!("{name}.C{}", out.len()), &values, defective, rng));
    }
    Dataset::new(name, out)
}

/// Append `duplicates` exact copies of random cases and `inconsistent`
/// label-flipped copies of random cases, then shuffle.
pub fn inject_problems(dataset: &Dataset, duplicates: usize, inconsistent: usize, rng: &mut impl Rng) -> Dataset {
    let mut cases = dataset.cases.clone();
    if !dataset.cases.is_empty() {
        for _ in 0..duplicates {
            let c = dataset.cases[rng.gen_range(0..dataset.cases.len())].clone();
            cases.push(c);
        }
        for _ in 0..inconsistent {
            let src = &dataset.cases[rng.gen_range(0..dataset.cases.len())];
            let bugs = if src.label.is_defective() { 0 } else { 1 };
            cases.push(Case::new(src.class_name.clone(), src.metrics.clone(), bugs));
        }
    }
    cases.shuffle(rng);
    dataset.with_cases(cases)
}

/// Add, for every target case, a group of `size` cases sharing one metric
/// row right next to it: all but one carry the wrong label. The group is
/// inconsistent, so cleaning removes it entirely.
pub fn inject_flipping_neighbors(pool: &Dataset, target: &Dataset, size: usize, rng: &mut impl Rng) -> Dataset {
    let mut cases = pool.cases.clone();
    for (i, t) in target.cases.iter().enumerate() {
        let mut values: Vec<f64> = t.metrics.to_scalars();
        // shift an unused metric so the group never equals the target row
        values[METRIC_COUNT - 1] += 0.125;
        let truth = t.label.is_defective();
        for j in 0..size.max(2) {
            let label = if j == 0 { truth } else { !truth };
            cases.push(case(format!("{}.N{i}.{j}", pool.name), &values, label, rng));
        }
    }
    pool.with_cases(cases)
}

/// Three projects (`alpha`, `beta`, `gamma`), two releases each, with
/// `target` = `alpha2`. With `inject` set, the `beta` and `gamma` releases
/// get flipping neighbor groups around the target cases.
pub fn three_project_corpus(inject: bool, seed: u64) -> Result<Corpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut datasets = Vec::new();
    for project in ["alpha", "beta", "gamma"] {
        for release in ["1", "2"] {
            datasets.push(random_dataset(&format!("{project}{release}"), 60, &mut rng));
        }
    }
    if inject {
        let target = datasets[1].clone();
        for d in datasets.iter_mut().skip(2) {
            *d = inject_flipping_neighbors(d, &target, 3, &mut rng);
        }
    }
    Corpus::new(datasets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cleaner::clean;
    use crate::quality::within_quality;

    #[test]
    fn random_dataset_is_clean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = random_dataset("x1", 150, &mut rng);
        assert_eq!(d.case_count(), 150);
        assert_eq!(clean(&d).removed_total, 0);
        let defective = d.defective_count();
        assert!(defective > 0 && defective < 150);
    }

    #[test]
    fn injected_problems_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = inject_problems(&random_dataset("x1", 50, &mut rng), 5, 4, &mut rng);
        assert_eq!(d.case_count(), 59);
        let q = within_quality(&d);
        assert!(q.identical_case_count > 0 && q.inconsistent_case_count > 0);
    }

    #[test]
    fn flipping_groups_are_removed_by_cleaning() {
        let corpus = three_project_corpus(true, 3).unwrap();
        let beta = corpus.get("beta1").unwrap();
        let r = clean(beta);
        assert_eq!(r.removed_total, 60 * 3);
        assert_eq!(r.cleaned.case_count(), 60);
        let plain = three_project_corpus(false, 3).unwrap();
        assert!(plain.datasets().iter().all(|d| clean(d).removed_total == 0));
    }
}
