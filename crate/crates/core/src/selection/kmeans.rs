//! Lloyd's k-means with k-means++ seeding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::scalar::{total_cmp, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KMeansConfig {
    pub k: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansConfig {
            k,
            max_iter: 300,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering<T> {
    pub k: usize,
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<T>>,
    pub iterations: usize,
    /// Within-cluster sum of squares after each centroid update.
    pub objective_trace: Vec<T>,
}

impl<T: Scalar> Clustering<T> {
    pub fn objective(&self, points: &Matrix<T>) -> T {
        within_ss(points, &self.assignments, &self.centroids)
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assignments {
            sizes[a] += 1;
        }
        sizes
    }
}

pub fn kmeans<T: Scalar>(points: &Matrix<T>, k: usize, seed: u64) -> Result<Clustering<T>> {
    kmeans_with(points, KMeansConfig::new(k, seed))
}

pub fn kmeans_with<T: Scalar>(points: &Matrix<T>, config: KMeansConfig) -> Result<Clustering<T>> {
    let k = config.k;
    if k == 0 {
        return Err(Error::Usage("k must be at least 1".into()));
    }
    if k > points.nrows() {
        return Err(Error::Usage(format!(
            "k = {k} exceeds the number of points ({})",
            points.nrows()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut centroids = seed_centroids(points, k, &mut rng);
    let mut assignments = assign(points, &centroids);
    let mut trace = Vec::new();
    let mut iterations = 0;
    loop {
        repair_empty(points, &mut assignments, &mut centroids);
        centroids = means(points, &assignments, k);
        trace.push(within_ss(points, &assignments, &centroids));
        iterations += 1;
        let next = assign(points, &centroids);
        if next == assignments || iterations >= config.max_iter {
            break;
        }
        assignments = next;
    }
    Ok(Clustering {
        k,
        assignments,
        centroids,
        iterations,
        objective_trace: trace,
    })
}

/// k-means++: first centre uniform, then proportional to squared distance to
/// the nearest chosen centre. When every remaining point coincides with a
/// centre the lowest unused index is taken.
fn seed_centroids<T: Scalar>(points: &Matrix<T>, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<T>> {
    let n = points.nrows();
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![points.row(first).to_vec()];
    let mut nearest: Vec<f64> = points
        .rows()
        .map(|r| squared_distance(r, &centroids[0]).as_f64())
        .collect();
    while centroids.len() < k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.gen::<f64>() * total;
            let mut pick = None;
            for (i, &w) in nearest.iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                if r < w {
                    pick = Some(i);
                    break;
                }
                r -= w;
            }
            pick.unwrap_or_else(|| {
                nearest
                    .iter()
                    .rposition(|&w| w > 0.0)
                    .expect("positive total weight")
            })
        } else {
            chosen.iter().position(|c| !c).expect("k <= n")
        };
        chosen[pick] = true;
        let c = points.row(pick).to_vec();
        for (i, row) in points.rows().enumerate() {
            nearest[i] = nearest[i].min(squared_distance(row, &c).as_f64());
        }
        centroids.push(c);
    }
    centroids
}

/// Nearest centroid per point; ties go to the lowest cluster id.
fn assign<T: Scalar>(points: &Matrix<T>, centroids: &[Vec<T>]) -> Vec<usize> {
    (0..points.nrows())
        .into_par_iter()
        .map(|i| nearest_centroid(points.row(i), centroids))
        .collect()
}

pub(crate) fn nearest_centroid<T: Scalar>(point: &[T], centroids: &[Vec<T>]) -> usize {
    let mut best = 0;
    let mut best_d = squared_distance(point, &centroids[0]);
    for (c, centroid) in centroids.iter().enumerate().skip(1) {
        let d = squared_distance(point, centroid);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

/// Give every empty cluster the point farthest from its centroid in the
/// currently largest cluster.
fn repair_empty<T: Scalar>(points: &Matrix<T>, assignments: &mut [usize], centroids: &mut [Vec<T>]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &a in assignments.iter() {
        sizes[a] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let donor = (0..k)
            .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
            .expect("k >= 1");
        if sizes[donor] < 2 {
            break;
        }
        let far = (0..points.nrows())
            .filter(|&i| assignments[i] == donor)
            .map(|i| (squared_distance(points.row(i), &centroids[donor]), i))
            .max_by(|a, b| total_cmp(a.0, b.0).then(b.1.cmp(&a.1)))
            .map(|(_, i)| i)
            .expect("donor is non-empty");
        assignments[far] = empty;
        centroids[empty] = points.row(far).to_vec();
        sizes[donor] -= 1;
        sizes[empty] += 1;
    }
}

fn means<T: Scalar>(points: &Matrix<T>, assignments: &[usize], k: usize) -> Vec<Vec<T>> {
    let mut sums = vec![vec![T::zero(); points.ncols()]; k];
    let mut counts = vec![0usize; k];
    for (row, &a) in points.rows().zip(assignments) {
        counts[a] += 1;
        for (s, &v) in sums[a].iter_mut().zip(row) {
            *s = *s + v;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            let n = T::of_usize(n);
            s.iter_mut().for_each(|v| *v = *v / n);
        }
    }
    sums
}

fn within_ss<T: Scalar>(points: &Matrix<T>, assignments: &[usize], centroids: &[Vec<T>]) -> T {
    points
        .rows()
        .zip(assignments)
        .map(|(row, &a)| squared_distance(row, &centroids[a]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(rows: &[[f64; 2]]) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn single_cluster_centroid_is_mean() {
        let p = pts(&[[0.0, 0.0], [2.0, 0.0], [4.0, 6.0]]);
        let c = kmeans(&p, 1, 3).unwrap();
        assert_eq!(c.assignments, vec![0, 0, 0]);
        assert_eq!(c.centroids[0], vec![2.0, 2.0]);
    }

    #[test]
    fn separated_blobs_are_recovered() {
        let mut rows = Vec::new();
        for i in 0..10 {
            rows.push([i as f64 * 0.01, 0.0]);
        }
        for i in 0..10 {
            rows.push([100.0 + i as f64 * 0.01, 50.0]);
        }
        for seed in 0..20 {
            let c = kmeans(&pts(&rows), 2, seed).unwrap();
            assert!(c.assignments[..10].iter().all(|&a| a == c.assignments[0]));
            assert!(c.assignments[10..].iter().all(|&a| a == c.assignments[10]));
            assert_ne!(c.assignments[0], c.assignments[10]);
        }
    }

    #[test]
    fn one_cluster_per_point() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [5.0, 5.0]]);
        let c = kmeans(&p, 4, 9).unwrap();
        let mut a = c.assignments.clone();
        a.sort_unstable();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(c.objective(&p), 0.0);
    }

    #[test]
    fn rejects_bad_k() {
        let p = pts(&[[0.0, 0.0]]);
        assert!(kmeans(&p, 2, 0).is_err());
        assert!(kmeans(&p, 0, 0).is_err());
    }

    #[test]
    fn duplicate_points_keep_clusters_non_empty() {
        let p = pts(&[[1.0, 1.0]; 5]);
        let c = kmeans(&p, 3, 1).unwrap();
        assert_eq!(c.centroids.len(), 3);
        assert!(c.iterations >= 1);
    }

    fn arb_points() -> impl Strategy<Value = Vec<[f64; 2]>> {
        proptest::collection::vec([0.0f64..100.0, 0.0f64..100.0], 3..80)
    }

    proptest! {
        #[test]
        fn objective_never_increases(rows in arb_points(), k in 1usize..6, seed in any::<u64>()) {
            let p = pts(&rows);
            let k = k.min(rows.len());
            let c = kmeans(&p, k, seed).unwrap();
            for w in c.objective_trace.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-9, "{:?}", c.objective_trace);
            }
        }

        #[test]
        fn converged_result_is_a_fixpoint(rows in arb_points(), k in 1usize..6, seed in any::<u64>()) {
            let p = pts(&rows);
            let k = k.min(rows.len());
            let c = kmeans(&p, k, seed).unwrap();
            prop_assume!(c.iterations < 300);
            prop_assert_eq!(&assign(&p, &c.centroids), &c.assignments);
            prop_assert_eq!(&means(&p, &c.assignments, k), &c.centroids);
            prop_assert!(c.cluster_sizes().iter().all(|&s| s > 0));
        }

        #[test]
        fn deterministic_for_seed(rows in arb_points(), seed in any::<u64>()) {
            let p = pts(&rows);
            prop_assert_eq!(kmeans(&p, 3, seed).unwrap(), kmeans(&p, 3, seed).unwrap());
        }
    }
}
