//! Bagged ensemble of unpruned trees with per-split feature subsampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{Builder, DecisionTree, TreeConfig};
use super::TrainingMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub trees: usize,
    /// Features tried at each split; `None` means `floor(log2 F) + 1`.
    pub features_per_split: Option<usize>,
    pub bootstrap: bool,
    pub min_leaf: usize,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            trees: 100,
            features_per_split: None,
            bootstrap: true,
            min_leaf: 1,
        }
    }
}

impl ForestConfig {
    pub fn features_for(&self, feature_count: usize) -> usize {
        let m = self
            .features_per_split
            .unwrap_or_else(|| feature_count.max(1).ilog2() as usize + 1);
        m.clamp(1, feature_count.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RandomForest<T> {
    feature_count: usize,
    trees: Vec<DecisionTree<T>>,
    config: ForestConfig,
    seed: u64,
}

impl<T: Scalar> RandomForest<T> {
    /// Tree `i` draws from stream `i` of a ChaCha8 generator seeded with
    /// `seed`, so the result does not depend on thread scheduling.
    pub fn fit(data: &TrainingMatrix<T>, config: &ForestConfig, seed: u64) -> Self {
        let n = data.len();
        let m = config.features_for(data.feature_count());
        let tree_config = TreeConfig {
            min_leaf: config.min_leaf,
            prune: false,
            ..TreeConfig::default()
        };
        let trees = (0..config.trees.max(1))
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let rows: Vec<usize> = if config.bootstrap {
                    (0..n).map(|_| rng.gen_range(0..n)).collect()
                } else {
                    (0..n).collect()
                };
                let nodes = Builder::new(data, config.min_leaf, Some(m), Some(&mut rng)).build(rows);
                DecisionTree::from_nodes(data.feature_count(), nodes, tree_config.clone())
            })
            .collect();
        RandomForest {
            feature_count: data.feature_count(),
            trees,
            config: config.clone(),
            seed,
        }
    }

    pub fn feature_count(&self) -> usize {
        self.feature_count
    }

    pub fn trees(&self) -> &[DecisionTree<T>] {
        &self.trees
    }

    pub fn config(&self) -> &ForestConfig {
        &self.config
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Mean of the per-tree leaf class frequencies.
    pub fn defect_probability(&self, row: &[T]) -> T {
        let sum: T = self.trees.iter().map(|t| t.defect_probability(row)).sum();
        sum / T::of_usize(self.trees.len())
    }
}
