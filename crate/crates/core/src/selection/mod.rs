//! Training-data selection for strict (or mixed) cross-project prediction.

mod burak;
mod kmeans;
mod peters;
mod pool;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use burak::{burak_filter, nearest_neighbors, DEFAULT_NEIGHBORS};
pub use kmeans::{kmeans, kmeans_with, Clustering, KMeansConfig};
pub use peters::{default_cluster_count, peters_filter, peters_trace, PetersTrace};
pub use pool::{build_pool, DistanceSpace, FeatureSpace, PoolCase, PoolMode, SourcePool};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Global,
    Burak,
    Peters,
}

impl FilterKind {
    pub const ALL: [FilterKind; 3] = [FilterKind::Global, FilterKind::Burak, FilterKind::Peters];

    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Global => "global",
            FilterKind::Burak => "burak",
            FilterKind::Peters => "peters",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            FilterKind::Global => "GlobalF",
            FilterKind::Burak => "BurakF",
            FilterKind::Peters => "PetersF",
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "global" | "globalf" => Ok(FilterKind::Global),
            "burak" | "burakf" => Ok(FilterKind::Burak),
            "peters" | "petersf" => Ok(FilterKind::Peters),
            other => Err(Error::Usage(format!("unknown filter `{other}`"))),
        }
    }
}

/// Parameters a selection was produced with.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clusters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub normalized: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Indices into a source pool, ascending and without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainingSelection {
    pub selected: Vec<usize>,
    pub filter: FilterKind,
    pub params: SelectionParams,
}

impl TrainingSelection {
    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

/// Every pool case.
pub fn global_filter(pool_size: usize) -> TrainingSelection {
    TrainingSelection {
        selected: (0..pool_size).collect(),
        filter: FilterKind::Global,
        params: SelectionParams::default(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub kind: FilterKind,
    pub k: usize,
    /// `None` picks [`default_cluster_count`].
    pub clusters: Option<usize>,
    pub seed: u64,
    pub space: DistanceSpace,
}

impl FilterConfig {
    pub fn new(kind: FilterKind) -> Self {
        FilterConfig {
            kind,
            k: DEFAULT_NEIGHBORS,
            clusters: None,
            seed: 0,
            space: DistanceSpace::Normalized,
        }
    }
}

/// Run the configured filter for `target` over `pool`.
pub fn select<T: Scalar>(
    pool: &SourcePool<'_>,
    target: &Dataset,
    config: &FilterConfig,
) -> Result<TrainingSelection> {
    if pool.is_empty() {
        return Err(Error::Usage("source pool is empty".into()));
    }
    if config.kind == FilterKind::Global {
        let mut s = global_filter(pool.len());
        s.params.normalized = config.space == DistanceSpace::Normalized;
        return Ok(s);
    }
    let space = FeatureSpace::<T>::build(pool, target, config.space);
    select_in_space(&space, config)
}

/// Filter over an already built feature space.
pub fn select_in_space<T: Scalar>(
    space: &FeatureSpace<T>,
    config: &FilterConfig,
) -> Result<TrainingSelection> {
    let mut selection = match config.kind {
        FilterKind::Global => global_filter(space.pool.nrows()),
        FilterKind::Burak => burak_filter(&space.pool, &space.target, config.k)?,
        FilterKind::Peters => {
            peters_filter(&space.pool, &space.target, config.clusters, config.seed, config.k)?
        }
    };
    selection.params.normalized = config.space == DistanceSpace::Normalized;
    Ok(selection)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_selects_everything() {
        let s = global_filter(7);
        assert_eq!(s.selected, (0..7).collect::<Vec<_>>());
        assert_eq!(global_filter(7), s);
    }

    #[test]
    fn filter_names_parse() {
        for k in FilterKind::ALL {
            assert_eq!(k.name().parse::<FilterKind>().unwrap(), k);
        }
        assert!("tca".parse::<FilterKind>().is_err());
    }
}
