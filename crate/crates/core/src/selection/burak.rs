use rayon::prelude::*;

use super::{FilterKind, SelectionParams, TrainingSelection};
use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::scalar::{total_cmp, Scalar};

pub const DEFAULT_NEIGHBORS: usize = 10;

/// The `k` pool rows closest to `query`, ordered by (distance, index).
pub fn nearest_neighbors<T: Scalar>(pool: &Matrix<T>, query: &[T], k: usize) -> Vec<usize> {
    let mut scored: Vec<(T, usize)> = pool
        .rows()
        .enumerate()
        .map(|(i, row)| (squared_distance(row, query), i))
        .collect();
    let by_distance = |a: &(T, usize), b: &(T, usize)| total_cmp(a.0, b.0).then(a.1.cmp(&b.1));
    let k = k.min(scored.len());
    if k == 0 {
        return Vec::new();
    }
    if k < scored.len() {
        scored.select_nth_unstable_by(k - 1, by_distance);
        scored.truncate(k);
    }
    scored.sort_unstable_by(by_distance);
    scored.into_iter().map(|(_, i)| i).collect()
}

/// Union of the `k` nearest pool rows of every target row.
pub fn burak_filter<T: Scalar>(
    pool: &Matrix<T>,
    target: &Matrix<T>,
    k: usize,
) -> Result<TrainingSelection> {
    if k == 0 {
        return Err(Error::Usage("k must be at least 1".into()));
    }
    if pool.nrows() == 0 {
        return Err(Error::Usage("source pool is empty".into()));
    }
    let mut params = SelectionParams {
        k: Some(k),
        ..SelectionParams::default()
    };
    if k > pool.nrows() {
        let msg = format!("k = {k} exceeds pool size {}; selecting the whole pool", pool.nrows());
        log::warn!("{msg}");
        params.warnings.push(msg);
    }
    let neighborhoods: Vec<Vec<usize>> = (0..target.nrows())
        .into_par_iter()
        .map(|t| nearest_neighbors(pool, target.row(t), k))
        .collect();
    let mut chosen = vec![false; pool.nrows()];
    for n in neighborhoods.iter().flatten() {
        chosen[*n] = true;
    }
    Ok(TrainingSelection {
        selected: chosen
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i)
            .collect(),
        filter: FilterKind::Burak,
        params,
    })
}
