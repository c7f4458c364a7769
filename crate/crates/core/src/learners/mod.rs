//! Naive Bayes, C4.5-style decision tree and random forest, all producing a
//! defect probability per case.

mod forest;
mod naive_bayes;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use forest::{ForestConfig, RandomForest};
pub use naive_bayes::{GaussianNaiveBayes, VARIANCE_FLOOR};
pub use tree::{DecisionTree, Node, TreeConfig};

use crate::data::{Case, Label, METRIC_COUNT};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Labelled feature rows.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingMatrix<T> {
    pub features: Matrix<T>,
    pub labels: Vec<Label>,
}

impl<T: Scalar> TrainingMatrix<T> {
    pub fn new(features: Matrix<T>, labels: Vec<Label>) -> Result<Self> {
        if features.nrows() == 0 {
            return Err(Error::Usage("training data is empty".into()));
        }
        if features.nrows() != labels.len() {
            return Err(Error::Usage(format!(
                "{} rows but {} labels",
                features.nrows(),
                labels.len()
            )));
        }
        Ok(TrainingMatrix { features, labels })
    }

    pub fn from_cases<'a>(cases: impl IntoIterator<Item = &'a Case>) -> Result<Self> {
        let mut features = Matrix::empty(METRIC_COUNT);
        let mut labels = Vec::new();
        for c in cases {
            features.push_row(&c.metrics.to_scalars::<T>())?;
            labels.push(c.label);
        }
        Self::new(features, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn feature_count(&self) -> usize {
        self.features.ncols()
    }

    /// Rows per class, indexed by `Label as usize`.
    pub fn class_counts(&self) -> [usize; 2] {
        let mut counts = [0; 2];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerKind {
    NaiveBayes,
    DecisionTree,
    RandomForest,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 3] = [
        LearnerKind::NaiveBayes,
        LearnerKind::DecisionTree,
        LearnerKind::RandomForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::NaiveBayes => "naive_bayes",
            LearnerKind::DecisionTree => "c45",
            LearnerKind::RandomForest => "random_forest",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            LearnerKind::NaiveBayes => "Naive Bayes",
            LearnerKind::DecisionTree => "C4.5",
            LearnerKind::RandomForest => "Random Forest",
        }
    }
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LearnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "naive_bayes" | "nb" | "naivebayes" => Ok(LearnerKind::NaiveBayes),
            "c45" | "c4.5" | "j48" | "tree" | "decision_tree" => Ok(LearnerKind::DecisionTree),
            "random_forest" | "rf" | "forest" => Ok(LearnerKind::RandomForest),
            other => Err(Error::Usage(format!("unknown learner `{other}`"))),
        }
    }
}

/// Hard label plus defect probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction<T> {
    pub label: Label,
    pub score: T,
}

/// Label for a defect probability: defective only strictly above one half.
pub fn label_for_score<T: Scalar>(score: T) -> Label {
    if score > T::of(0.5) {
        Label::Defective
    } else {
        Label::DefectFree
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "T: Scalar")]
pub enum Model<T> {
    NaiveBayes(GaussianNaiveBayes<T>),
    DecisionTree(DecisionTree<T>),
    RandomForest(RandomForest<T>),
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct Envelope<T> {
    format_version: u32,
    model: Model<T>,
}

impl<T: Scalar> Model<T> {
    pub fn kind(&self) -> LearnerKind {
        match self {
            Model::NaiveBayes(_) => LearnerKind::NaiveBayes,
            Model::DecisionTree(_) => LearnerKind::DecisionTree,
            Model::RandomForest(_) => LearnerKind::RandomForest,
        }
    }

    pub fn feature_count(&self) -> usize {
        match self {
            Model::NaiveBayes(m) => m.feature_count(),
            Model::DecisionTree(m) => m.feature_count(),
            Model::RandomForest(m) => m.feature_count(),
        }
    }

    /// Defect probability of one row; the row length is not checked.
    pub fn defect_probability(&self, row: &[T]) -> T {
        match self {
            Model::NaiveBayes(m) => m.defect_probability(row),
            Model::DecisionTree(m) => m.defect_probability(row),
            Model::RandomForest(m) => m.defect_probability(row),
        }
    }

    /// `[P(defect-free), P(defective)]`.
    pub fn predict_proba(&self, row: &[T]) -> [T; 2] {
        let p = self.defect_probability(row);
        [T::one() - p, p]
    }

    pub fn predict(&self, rows: &Matrix<T>) -> Result<Vec<Prediction<T>>> {
        if rows.ncols() != self.feature_count() {
            return Err(Error::Usage(format!(
                "model expects {} features, got {}",
                self.feature_count(),
                rows.ncols()
            )));
        }
        Ok(rows
            .rows()
            .map(|r| {
                let score = self.defect_probability(r);
                Prediction {
                    label: label_for_score(score),
                    score,
                }
            })
            .collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&Envelope {
            format_version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        })?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let env: Envelope<T> = serde_json::from_str(json)?;
        if env.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Usage(format!(
                "unsupported model format version {}",
                env.format_version
            )));
        }
        Ok(env.model)
    }
}

/// Hyperparameters for all three learners.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub tree: TreeConfig,
    pub forest: ForestConfig,
}

pub fn train_naive_bayes<T: Scalar>(data: &TrainingMatrix<T>) -> Model<T> {
    Model::NaiveBayes(GaussianNaiveBayes::fit(data))
}

pub fn train_tree<T: Scalar>(data: &TrainingMatrix<T>, config: &TreeConfig) -> Model<T> {
    Model::DecisionTree(DecisionTree::fit(data, config))
}

pub fn train_forest<T: Scalar>(data: &TrainingMatrix<T>, config: &ForestConfig, seed: u64) -> Model<T> {
    Model::RandomForest(RandomForest::fit(data, config, seed))
}

pub fn train<T: Scalar>(
    kind: LearnerKind,
    data: &TrainingMatrix<T>,
    config: &LearnerConfig,
    seed: u64,
) -> Model<T> {
    match kind {
        LearnerKind::NaiveBayes => train_naive_bayes(data),
        LearnerKind::DecisionTree => train_tree(data, &config.tree),
        LearnerKind::RandomForest => train_forest(data, &config.forest, seed),
    }
}
