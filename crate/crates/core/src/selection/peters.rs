//! Cluster-then-nearest selection.
//!
//! Pool and target rows are clustered together. Clusters without a target row
//! are dropped. Every pool row left is labelled with its nearest target row in
//! the same cluster, and each target row then picks the nearest pool row among
//! those labelled with it.

use serde::Serialize;

use super::burak::burak_filter;
use super::kmeans::{kmeans, Clustering};
use super::{FilterKind, SelectionParams, TrainingSelection};
use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::scalar::Scalar;

/// `max(2, round(sqrt(n / 2)))` for `n` combined points, capped at `n`.
pub fn default_cluster_count(n: usize) -> usize {
    let k = ((n as f64 / 2.0).sqrt()).round() as usize;
    k.max(2).min(n.max(1))
}

/// Intermediate state of one run, exposed for inspection and testing.
#[derive(Debug, Clone, Serialize)]
pub struct PetersTrace<T> {
    pub clustering: Clustering<T>,
    /// Cluster ids holding at least one target row, ascending.
    pub retained: Vec<usize>,
    /// For each pool row in a retained cluster: the target row it is labelled with.
    pub labels: Vec<Option<usize>>,
    /// For each target row: the pool row it picked, if any was labelled with it.
    pub picks: Vec<Option<usize>>,
}

pub fn peters_trace<T: Scalar>(
    pool: &Matrix<T>,
    target: &Matrix<T>,
    clusters: usize,
    seed: u64,
) -> Result<PetersTrace<T>> {
    if pool.nrows() == 0 || target.nrows() == 0 {
        return Err(Error::Usage("pool and target must be non-empty".into()));
    }
    let combined = pool.stack(target)?;
    let clustering = kmeans(&combined, clusters, seed)?;
    let n_pool = pool.nrows();
    let cluster_of_pool = &clustering.assignments[..n_pool];
    let cluster_of_target = &clustering.assignments[n_pool..];

    let mut retained_mask = vec![false; clusters];
    for &c in cluster_of_target {
        retained_mask[c] = true;
    }
    let retained = (0..clusters).filter(|&c| retained_mask[c]).collect();

    let labels: Vec<Option<usize>> = (0..n_pool)
        .map(|p| {
            let c = cluster_of_pool[p];
            if !retained_mask[c] {
                return None;
            }
            nearest_among(target, pool.row(p), |t| cluster_of_target[t] == c)
        })
        .collect();

    let picks = (0..target.nrows())
        .map(|t| nearest_among(pool, target.row(t), |p| labels[p] == Some(t)))
        .collect();

    Ok(PetersTrace {
        clustering,
        retained,
        labels,
        picks,
    })
}

/// Nearest row of `rows` to `query` among those passing `keep`; ties go to the
/// lower index.
fn nearest_among<T: Scalar>(
    rows: &Matrix<T>,
    query: &[T],
    keep: impl Fn(usize) -> bool,
) -> Option<usize> {
    let mut best: Option<(T, usize)> = None;
    for (i, row) in rows.rows().enumerate() {
        if !keep(i) {
            continue;
        }
        let d = squared_distance(row, query);
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, i));
        }
    }
    best.map(|(_, i)| i)
}

/// Run the filter with `clusters` clusters (default [`default_cluster_count`]).
/// Falls back to the nearest-neighbour filter with `fallback_k` when no
/// retained cluster holds a pool row.
pub fn peters_filter<T: Scalar>(
    pool: &Matrix<T>,
    target: &Matrix<T>,
    clusters: Option<usize>,
    seed: u64,
    fallback_k: usize,
) -> Result<TrainingSelection> {
    let k = clusters.unwrap_or_else(|| default_cluster_count(pool.nrows() + target.nrows()));
    let trace = peters_trace(pool, target, k, seed)?;
    if trace.labels.iter().all(Option::is_none) {
        let msg = format!("no retained cluster contains pool cases; falling back to burak (k = {fallback_k})");
        log::warn!("{msg}");
        let mut s = burak_filter(pool, target, fallback_k)?;
        s.filter = FilterKind::Peters;
        s.params.clusters = Some(k);
        s.params.seed = Some(seed);
        s.params.warnings.push(msg);
        return Ok(s);
    }
    let mut selected: Vec<usize> = trace.picks.iter().flatten().copied().collect();
    selected.sort_unstable();
    selected.dedup();
    Ok(TrainingSelection {
        selected,
        filter: FilterKind::Peters,
        params: SelectionParams {
            clusters: Some(k),
            seed: Some(seed),
            ..SelectionParams::default()
        },
    })
}
