//! Identical and inconsistent case statistics, within one dataset and across
//! two releases of the same project.
//!
//! Counting semantics:
//! * identical cases: every member of a group of two or more cases that agree
//!   on all metrics and on the label;
//! * inconsistent cases: every member of a group of cases sharing a metric
//!   vector whose labels are not all equal;
//! * release pairs are counted as case pairs `(a, b)` with `a` in the older
//!   and `b` in the newer release.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::data::{Corpus, Dataset, Label, MetricVector};
use crate::error::{Error, Result};
use crate::reference;

/// Cases of one dataset sharing a metric vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatureGroup {
    pub key: MetricVector,
    pub member_indices: Vec<usize>,
    pub labels: Vec<Label>,
}

impl FeatureGroup {
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }

    pub fn is_mixed(&self) -> bool {
        self.labels.windows(2).any(|w| w[0] != w[1])
    }
}

/// Group cases by metric vector, or by metric vector and label when
/// `with_label` is set. Groups appear in first-occurrence order.
pub fn feature_groups(dataset: &Dataset, with_label: bool) -> Vec<FeatureGroup> {
    let mut slot: HashMap<(&MetricVector, Option<Label>), usize> = HashMap::new();
    let mut groups: Vec<FeatureGroup> = Vec::new();
    for (i, case) in dataset.cases.iter().enumerate() {
        let key = (&case.metrics, with_label.then_some(case.label));
        let g = *slot.entry(key).or_insert_with(|| {
            groups.push(FeatureGroup {
                key: case.metrics.clone(),
                member_indices: Vec::new(),
                labels: Vec::new(),
            });
            groups.len() - 1
        });
        groups[g].member_indices.push(i);
        groups[g].labels.push(case.label);
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WithinQualityReport {
    pub dataset_name: String,
    pub case_count: usize,
    pub identical_case_count: usize,
    pub inconsistent_case_count: usize,
    /// Full-row (metrics and label) groups with at least two members.
    #[serde(skip)]
    pub identical_groups: Vec<FeatureGroup>,
    /// Metric-vector groups carrying both labels.
    #[serde(skip)]
    pub inconsistent_groups: Vec<FeatureGroup>,
}

pub fn within_quality(dataset: &Dataset) -> WithinQualityReport {
    let identical_groups: Vec<FeatureGroup> = feature_groups(dataset, true)
        .into_iter()
        .filter(|g| g.len() >= 2)
        .collect();
    let inconsistent_groups: Vec<FeatureGroup> = feature_groups(dataset, false)
        .into_iter()
        .filter(FeatureGroup::is_mixed)
        .collect();
    WithinQualityReport {
        dataset_name: dataset.name.clone(),
        case_count: dataset.case_count(),
        identical_case_count: identical_groups.iter().map(FeatureGroup::len).sum(),
        inconsistent_case_count: inconsistent_groups.iter().map(FeatureGroup::len).sum(),
        identical_groups,
        inconsistent_groups,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossReleaseReport {
    pub release1: String,
    pub release2: String,
    pub identical_pair_count: usize,
    pub inconsistent_pair_count: usize,
}

/// Pair counts over `older × newer`. Both must belong to the same project.
pub fn cross_release_quality(older: &Dataset, newer: &Dataset) -> Result<CrossReleaseReport> {
    if older.project != newer.project {
        return Err(Error::Usage(format!(
            "`{}` and `{}` belong to different projects",
            older.name, newer.name
        )));
    }
    if older.name == newer.name {
        return Err(Error::Usage(format!(
            "cannot pair release `{}` with itself",
            older.name
        )));
    }
    let mut counts: HashMap<&MetricVector, [usize; 2]> = HashMap::new();
    for case in &older.cases {
        counts.entry(&case.metrics).or_default()[case.label as usize] += 1;
    }
    let mut identical = 0;
    let mut inconsistent = 0;
    for case in &newer.cases {
        if let Some(c) = counts.get(&case.metrics) {
            identical += c[case.label as usize];
            inconsistent += c[case.label.flipped() as usize];
        }
    }
    Ok(CrossReleaseReport {
        release1: older.name.clone(),
        release2: newer.name.clone(),
        identical_pair_count: identical,
        inconsistent_pair_count: inconsistent,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusQualityReport {
    pub within: Vec<WithinQualityReport>,
    pub cross: Vec<CrossReleaseReport>,
}

/// One within-report per dataset (corpus order) and one cross-report per
/// release pair of every multi-release project, older release first.
pub fn corpus_quality_report(corpus: &Corpus) -> CorpusQualityReport {
    use rayon::prelude::*;

    let within = corpus.datasets().par_iter().map(within_quality).collect();
    let mut pairs = Vec::new();
    for names in corpus.projects().values() {
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    let cross = pairs
        .par_iter()
        .map(|(a, b)| {
            let older = corpus.get(a).expect("indexed dataset");
            let newer = corpus.get(b).expect("indexed dataset");
            cross_release_quality(older, newer).expect("releases of one project")
        })
        .collect();
    CorpusQualityReport { within, cross }
}

fn cell(ours: usize, published: Option<usize>) -> String {
    match published {
        Some(p) if p != ours => format!("{ours} ({p})†"),
        _ => ours.to_string(),
    }
}

impl CorpusQualityReport {
    /// Markdown in the two-table layout: per dataset `#Inc`/`#Ide`, and per
    /// release pair `#Identical`/`#Inconsistent`. Cells that differ from the
    /// published value show it in parentheses with a dagger.
    pub fn to_markdown(&self, include_pairs: bool) -> String {
        let mut out = String::new();
        out.push_str("## Per-dataset quality\n\n");
        out.push_str("| Dataset | #Case | #Inc | #Ide |\n|---|---:|---:|---:|\n");
        let mut flagged = 0;
        for r in &self.within {
            let published = reference::dataset(&r.dataset_name);
            let inc = cell(r.inconsistent_case_count, published.map(|p| p.inconsistent));
            let ide = cell(r.identical_case_count, published.map(|p| p.identical));
            flagged += usize::from(inc.ends_with('†')) + usize::from(ide.ends_with('†'));
            let _ = writeln!(out, "| {} | {} | {inc} | {ide} |", r.dataset_name, r.case_count);
        }
        if include_pairs {
            out.push_str("\n## Release-pair quality\n\n");
            out.push_str(
                "| Release1 | Release2 | #Identical | #Inconsistent |\n|---|---|---:|---:|\n",
            );
            for r in &self.cross {
                let published = reference::pair(&r.release1, &r.release2);
                let ide = cell(r.identical_pair_count, published.map(|p| p.identical));
                let inc = cell(r.inconsistent_pair_count, published.map(|p| p.inconsistent));
                flagged += usize::from(inc.ends_with('†')) + usize::from(ide.ends_with('†'));
                let _ = writeln!(out, "| {} | {} | {ide} | {inc} |", r.release1, r.release2);
            }
        }
        let _ = write!(
            out,
            "\n#Ide counts every member of a duplicated (metrics + label) group; \
             #Inc counts every member of a metric group with mixed labels; \
             release pairs count case pairs across the two releases.\n\
             {flagged} cell(s) differ from the published figures (shown as `ours (published)†`).\n"
        );
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
