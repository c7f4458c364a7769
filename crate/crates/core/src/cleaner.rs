//! Two-step cleaning: drop duplicate cases, then drop inconsistent cases.
//!
//! [`clean`] works on groups: keep the first occurrence of every
//! (metrics, label) row, then drop every metric group that still carries both
//! labels. [`clean_oracle`] replays the index-by-index double loops on a
//! mutable case list and is kept as an independent cross-check.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::data::{Corpus, Dataset, Label, MetricVector};
use crate::error::{Error, Result};

/// Largest dataset [`clean_oracle`] accepts by default.
pub const DEFAULT_ORACLE_BOUND: usize = 5_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CleanResult {
    pub cleaned: Dataset,
    pub original_case_count: usize,
    pub original_defective_count: usize,
    pub removed_duplicates: usize,
    pub removed_inconsistent: usize,
    pub removed_total: usize,
    pub removed_defective: usize,
    /// Indices into the original dataset, ascending.
    pub removed_indices: Vec<usize>,
}

impl CleanResult {
    fn assemble(
        original: &Dataset,
        duplicates: Vec<usize>,
        inconsistent: Vec<usize>,
    ) -> CleanResult {
        let mut removed: Vec<usize> = duplicates.iter().chain(&inconsistent).copied().collect();
        removed.sort_unstable();
        let drop: HashSet<usize> = removed.iter().copied().collect();
        let cases = original
            .cases
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, c)| c.clone())
            .collect();
        let cleaned = original.with_cases(cases);
        let removed_defective = removed
            .iter()
            .filter(|&&i| original.cases[i].label.is_defective())
            .count();
        CleanResult {
            original_case_count: original.case_count(),
            original_defective_count: original.defective_count(),
            removed_duplicates: duplicates.len(),
            removed_inconsistent: inconsistent.len(),
            removed_total: removed.len(),
            removed_defective,
            removed_indices: removed,
            cleaned,
        }
    }

    /// Check the bookkeeping identities and post-clean uniqueness.
    pub fn verify(&self) -> Result<()> {
        let name = &self.cleaned.name;
        if self.removed_total != self.removed_duplicates + self.removed_inconsistent {
            return Err(Error::Invariant(format!(
                "{name}: removed_total != duplicates + inconsistent"
            )));
        }
        if self.original_case_count != self.cleaned.case_count() + self.removed_total {
            return Err(Error::Invariant(format!(
                "{name}: {} != {} + {}",
                self.original_case_count,
                self.cleaned.case_count(),
                self.removed_total
            )));
        }
        if self.original_defective_count != self.cleaned.defective_count() + self.removed_defective
        {
            return Err(Error::Invariant(format!(
                "{name}: defective counts do not add up"
            )));
        }
        let mut seen = HashSet::with_capacity(self.cleaned.case_count());
        if !self.cleaned.cases.iter().all(|c| seen.insert(&c.metrics)) {
            return Err(Error::Invariant(format!(
                "{name}: cleaned dataset still shares a metric vector"
            )));
        }
        Ok(())
    }
}

/// Clean one dataset. Survivors keep their original relative order and raw
/// fields.
pub fn clean(dataset: &Dataset) -> CleanResult {
    let mut first_row: HashSet<(&MetricVector, Label)> = HashSet::new();
    let mut duplicates = Vec::new();
    let mut survivors = Vec::new();
    for (i, case) in dataset.cases.iter().enumerate() {
        if first_row.insert((&case.metrics, case.label)) {
            survivors.push(i);
        } else {
            duplicates.push(i);
        }
    }
    // After dedup a metric vector occurs at most once per label.
    let mut labels: HashMap<&MetricVector, u8> = HashMap::new();
    for &i in &survivors {
        *labels.entry(&dataset.cases[i].metrics).or_default() += 1;
    }
    let inconsistent = survivors
        .into_iter()
        .filter(|&i| labels[&dataset.cases[i].metrics] > 1)
        .collect();
    CleanResult::assemble(dataset, duplicates, inconsistent)
}

/// Which step runs first. Only the dedup-first order is the cleaning method;
/// the swapped order exists to show that the order matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOrder {
    DedupFirst,
    InconsistentFirst,
}

struct Working<'a> {
    dataset: &'a Dataset,
    /// Original indices of the cases still present, in order.
    alive: Vec<usize>,
    duplicates: Vec<usize>,
    inconsistent: Vec<usize>,
}

impl Working<'_> {
    fn row_equal(&self, i: usize, j: usize) -> bool {
        let (a, b) = (
            &self.dataset.cases[self.alive[i]],
            &self.dataset.cases[self.alive[j]],
        );
        a.metrics == b.metrics && a.label == b.label
    }

    fn inconsistent_pair(&self, i: usize, j: usize) -> bool {
        let (a, b) = (
            &self.dataset.cases[self.alive[i]],
            &self.dataset.cases[self.alive[j]],
        );
        a.metrics == b.metrics && a.label != b.label
    }

    // for i, for j > i: if row[i] == row[j] remove case j
    fn remove_duplicates(&mut self) {
        let mut i = 0;
        while i < self.alive.len() {
            let mut j = i + 1;
            while j < self.alive.len() {
                if self.row_equal(i, j) {
                    self.duplicates.push(self.alive.remove(j));
                } else {
                    j += 1;
                }
            }
            i += 1;
        }
    }

    // for i, for j > i: if features equal and labels differ remove cases i and j
    fn remove_inconsistent(&mut self) {
        let mut i = 0;
        while i < self.alive.len() {
            let mut removed = false;
            for j in i + 1..self.alive.len() {
                if self.inconsistent_pair(i, j) {
                    let b = self.alive.remove(j);
                    let a = self.alive.remove(i);
                    self.inconsistent.extend([a, b]);
                    removed = true;
                    break;
                }
            }
            if !removed {
                i += 1;
            }
        }
    }
}

/// Literal double-loop cleaning, O(n²). Refuses datasets above `bound` cases.
pub fn clean_oracle(dataset: &Dataset, bound: usize) -> Result<CleanResult> {
    clean_oracle_ordered(dataset, bound, StepOrder::DedupFirst)
}

pub fn clean_oracle_ordered(dataset: &Dataset, bound: usize, order: StepOrder) -> Result<CleanResult> {
    if dataset.case_count() > bound {
        return Err(Error::OracleBound {
            cases: dataset.case_count(),
            bound,
        });
    }
    let mut w = Working {
        dataset,
        alive: (0..dataset.case_count()).collect(),
        duplicates: Vec::new(),
        inconsistent: Vec::new(),
    };
    match order {
        StepOrder::DedupFirst => {
            w.remove_duplicates();
            w.remove_inconsistent();
        }
        StepOrder::InconsistentFirst => {
            w.remove_inconsistent();
            w.remove_duplicates();
        }
    }
    Ok(CleanResult::assemble(dataset, w.duplicates, w.inconsistent))
}

/// One row of the cleaned-corpus summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleanSummaryRow {
    pub dataset: String,
    pub cases: usize,
    pub deleted_cases: usize,
    pub defective: usize,
    pub deleted_defective: usize,
    pub deleted_duplicates: usize,
    pub deleted_inconsistent: usize,
}

impl From<&CleanResult> for CleanSummaryRow {
    fn from(r: &CleanResult) -> Self {
        CleanSummaryRow {
            dataset: r.cleaned.name.clone(),
            cases: r.cleaned.case_count(),
            deleted_cases: r.removed_total,
            defective: r.cleaned.defective_count(),
            deleted_defective: r.removed_defective,
            deleted_duplicates: r.removed_duplicates,
            deleted_inconsistent: r.removed_inconsistent,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CleanedCorpus {
    pub corpus: Corpus,
    pub results: Vec<CleanResult>,
}

impl CleanedCorpus {
    pub fn summary(&self) -> Vec<CleanSummaryRow> {
        self.results.iter().map(CleanSummaryRow::from).collect()
    }

    pub fn verify(&self) -> Result<()> {
        self.results.iter().try_for_each(CleanResult::verify)
    }

    pub fn summary_markdown(&self) -> String {
        let mut out = String::from(
            "| Dataset | #Case | #delCase | #Defective | #delDefective |\n|---|---:|---:|---:|---:|\n",
        );
        for r in self.summary() {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.dataset, r.cases, r.deleted_cases, r.defective, r.deleted_defective
            );
        }
        out
    }
}

/// Clean every dataset of `corpus` independently.
pub fn clean_corpus(corpus: &Corpus) -> Result<CleanedCorpus> {
    use rayon::prelude::*;

    let results: Vec<CleanResult> = corpus.datasets().par_iter().map(clean).collect();
    let cleaned = Corpus::new(results.iter().map(|r| r.cleaned.clone()).collect())?;
    Ok(CleanedCorpus {
        corpus: cleaned,
        results,
    })
}
