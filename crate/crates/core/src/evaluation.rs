//! F-Measure, ROC AUC and the rate of change between original and cleaned
//! scores. The defective class is the positive class throughout.

use serde::{Deserialize, Serialize};

use crate::data::Label;
use crate::error::{Error, Result};
use crate::scalar::{total_cmp, Scalar};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn from_labels(truth: &[Label], predicted: &[Label]) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::Usage(format!(
                "{} labels but {} predictions",
                truth.len(),
                predicted.len()
            )));
        }
        let mut cm = ConfusionMatrix::default();
        for (&t, &p) in truth.iter().zip(predicted) {
            match (t.is_defective(), p.is_defective()) {
                (true, true) => cm.tp += 1,
                (false, true) => cm.fp += 1,
                (false, false) => cm.tn += 1,
                (true, false) => cm.fn_ += 1,
            }
        }
        Ok(cm)
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// `None` when nothing was predicted defective.
    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    /// `None` when there are no defective cases.
    pub fn recall(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Harmonic mean of precision and recall; 0 when either is undefined or
/// both are 0.
///
/// Computed as `2tp / (2tp + fp + fn)`, which equals `2PR / (P + R)` with a
/// single rounding.
pub fn f_measure(cm: &ConfusionMatrix) -> f64 {
    if cm.tp == 0 {
        return 0.0;
    }
    let tp2 = 2.0 * cm.tp as f64;
    tp2 / (tp2 + cm.fp as f64 + cm.fn_ as f64)
}

fn check_lengths<T>(truth: &[Label], scores: &[T]) -> Result<()> {
    if truth.len() != scores.len() {
        return Err(Error::Usage(format!(
            "{} labels but {} scores",
            truth.len(),
            scores.len()
        )));
    }
    Ok(())
}

/// Mann-Whitney AUC with average ranks for ties.
///
/// `Ok(None)` when the ground truth has a single class.
pub fn auc<T: Scalar>(truth: &[Label], scores: &[T]) -> Result<Option<f64>> {
    check_lengths(truth, scores)?;
    let pos = truth.iter().filter(|l| l.is_defective()).count();
    let neg = truth.len() - pos;
    if pos == 0 || neg == 0 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| total_cmp(scores[a], scores[b]));
    let mut pos_rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // ranks are 1-based: the tie block covers ranks i+1..=j+1
        let avg = (i + j + 2) as f64 / 2.0;
        let block_pos = order[i..=j].iter().filter(|&&k| truth[k].is_defective()).count();
        pos_rank_sum += avg * block_pos as f64;
        i = j + 1;
    }
    let u = pos_rank_sum - (pos * (pos + 1)) as f64 / 2.0;
    Ok(Some(u / (pos as f64 * neg as f64)))
}

/// ROC points `(fpr, tpr)` from the strictest threshold down, one point per
/// distinct score, starting at `(0, 0)`. `None` for single-class truth.
pub fn roc_curve<T: Scalar>(truth: &[Label], scores: &[T]) -> Result<Option<Vec<(f64, f64)>>> {
    check_lengths(truth, scores)?;
    let pos = truth.iter().filter(|l| l.is_defective()).count();
    let neg = truth.len() - pos;
    if pos == 0 || neg == 0 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| total_cmp(scores[b], scores[a]));
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    for (k, &i) in order.iter().enumerate() {
        if truth[i].is_defective() {
            tp += 1;
        } else {
            fp += 1;
        }
        let last_of_block = order.get(k + 1).is_none_or(|&n| scores[n] != scores[i]);
        if last_of_block {
            points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
        }
    }
    Ok(Some(points))
}

/// Trapezoidal area under [`roc_curve`].
pub fn auc_trapezoid<T: Scalar>(truth: &[Label], scores: &[T]) -> Result<Option<f64>> {
    Ok(roc_curve(truth, scores)?.map(|pts| {
        pts.windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
            .sum()
    }))
}

/// Scores for one prediction run. `auc` is `None` for single-class truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalScores {
    pub f_measure: f64,
    pub auc: Option<f64>,
    pub counts: ConfusionMatrix,
}

pub fn evaluate<T: Scalar>(truth: &[Label], scores: &[T]) -> Result<EvalScores> {
    check_lengths(truth, scores)?;
    let predicted: Vec<Label> = scores.iter().map(|&s| crate::learners::label_for_score(s)).collect();
    let counts = ConfusionMatrix::from_labels(truth, &predicted)?;
    Ok(EvalScores {
        f_measure: f_measure(&counts),
        auc: auc(truth, scores)?,
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChangeRate {
    pub original: f64,
    pub cleaned: f64,
    /// `None` when the original score is 0 and the cleaned one is not.
    pub rate_percent: Option<f64>,
}

pub fn change_rate(original: f64, cleaned: f64) -> ChangeRate {
    let rate_percent = if original != 0.0 {
        Some((cleaned - original) / original * 100.0)
    } else if cleaned == 0.0 {
        Some(0.0)
    } else {
        None
    };
    ChangeRate {
        original,
        cleaned,
        rate_percent,
    }
}

/// Mean of the defined rates; `None` when no rate is defined.
pub fn average_change<'a>(rows: impl IntoIterator<Item = &'a ChangeRate>) -> Option<f64> {
    mean_defined(rows.into_iter().map(|r| r.rate_percent))
}

pub(crate) fn mean_defined(values: impl IntoIterator<Item = Option<f64>>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .flatten()
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}
