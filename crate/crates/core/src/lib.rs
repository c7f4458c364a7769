//! Data-quality analysis and cleaning for class-level software defect
//! datasets (PROMISE/Jureczko schema), plus the machinery to measure how
//! cleaning changes cross-project defect prediction: training-data filters,
//! three learners, F-Measure/AUC and an experiment harness.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); metric equality
//! is exact through [`Decimal`]. The `f64` aliases below are what the harness
//! and the command-line tool use.

pub mod cleaner;
pub mod data;
pub mod decimal;
pub mod error;
pub mod evaluation;
pub mod harness;
pub mod learners;
pub mod matrix;
pub mod quality;
pub mod reference;
pub mod scalar;
pub mod selection;
pub mod synthetic;

pub use decimal::Decimal;
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Matrix = matrix::Matrix<f64>;
pub type Clustering = selection::Clustering<f64>;
pub type FeatureSpace = selection::FeatureSpace<f64>;
pub type TrainingMatrix = learners::TrainingMatrix<f64>;
pub type Model = learners::Model<f64>;
pub type NaiveBayes = learners::GaussianNaiveBayes<f64>;
pub type DecisionTree = learners::DecisionTree<f64>;
pub type RandomForest = learners::RandomForest<f64>;
