use serde::{Deserialize, Serialize};

use super::TrainingMatrix;
use crate::data::Label;
use crate::scalar::Scalar;

/// Lower bound on every per-class feature variance.
pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Gaussian naive Bayes over two classes.
///
/// Priors are Laplace-smoothed class frequencies, `(n_c + 1) / (n + 2)`.
/// With a single class in the training data the model degenerates to that
/// class with probability one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GaussianNaiveBayes<T> {
    feature_count: usize,
    state: State<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound = "T: Scalar")]
enum State<T> {
    PriorOnly(Label),
    Gaussian {
        /// Indexed by `Label as usize`.
        log_prior: [T; 2],
        mean: [Vec<T>; 2],
        variance: [Vec<T>; 2],
    },
}

impl<T: Scalar> GaussianNaiveBayes<T> {
    pub fn fit(data: &TrainingMatrix<T>) -> Self {
        let d = data.feature_count();
        let counts = data.class_counts();
        let state = if counts[0] == 0 || counts[1] == 0 {
            let only = if counts[1] > 0 {
                Label::Defective
            } else {
                Label::DefectFree
            };
            State::PriorOnly(only)
        } else {
            let mut mean = [vec![T::zero(); d], vec![T::zero(); d]];
            let mut variance = [vec![T::zero(); d], vec![T::zero(); d]];
            for (row, &l) in data.features.rows().zip(&data.labels) {
                for (m, &x) in mean[l as usize].iter_mut().zip(row) {
                    *m = *m + x;
                }
            }
            for c in 0..2 {
                let n = T::of_usize(counts[c]);
                mean[c].iter_mut().for_each(|m| *m = *m / n);
            }
            for (row, &l) in data.features.rows().zip(&data.labels) {
                let c = l as usize;
                for j in 0..d {
                    let diff = row[j] - mean[c][j];
                    variance[c][j] = variance[c][j] + diff * diff;
                }
            }
            let floor = T::of(VARIANCE_FLOOR);
            for c in 0..2 {
                let n = T::of_usize(counts[c]);
                variance[c]
                    .iter_mut()
                    .for_each(|v| *v = (*v / n).max(floor));
            }
            let total = T::of_usize(counts[0] + counts[1] + 2);
            let log_prior = [
                (T::of_usize(counts[0] + 1) / total).ln(),
                (T::of_usize(counts[1] + 1) / total).ln(),
            ];
            State::Gaussian {
                log_prior,
                mean,
                variance,
            }
        };
        GaussianNaiveBayes {
            feature_count: d,
            state,
        }
    }

    pub fn feature_count(&self) -> usize {
        self.feature_count
    }

    /// Joint log-likelihood per class, or `None` for a prior-only model.
    pub fn log_joint(&self, row: &[T]) -> Option<[T; 2]> {
        let State::Gaussian {
            log_prior,
            mean,
            variance,
        } = &self.state
        else {
            return None;
        };
        let half = T::of(0.5);
        let two_pi = T::of(std::f64::consts::TAU);
        let mut out = *log_prior;
        for (c, slot) in out.iter_mut().enumerate() {
            for ((&x, &m), &v) in row.iter().zip(&mean[c]).zip(&variance[c]) {
                let diff = x - m;
                *slot = *slot - half * (two_pi * v).ln() - diff * diff / (v + v);
            }
        }
        Some(out)
    }

    pub fn defect_probability(&self, row: &[T]) -> T {
        match self.log_joint(row) {
            None => match self.state {
                State::PriorOnly(Label::Defective) => T::one(),
                _ => T::zero(),
            },
            Some([clean, defect]) => {
                let top = clean.max(defect);
                let a = (clean - top).exp();
                let b = (defect - top).exp();
                b / (a + b)
            }
        }
    }
}
