use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{compare_releases, Case, Corpus, Dataset, METRIC_COUNT};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Which datasets may feed the source pool.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolMode {
    /// Other projects only.
    #[default]
    Strict,
    /// Other projects plus older releases of the target's project.
    Mixed,
}

impl FromStr for PoolMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "strict" => Ok(PoolMode::Strict),
            "mixed" => Ok(PoolMode::Mixed),
            other => Err(Error::Usage(format!("unknown pool mode `{other}`"))),
        }
    }
}

impl fmt::Display for PoolMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoolMode::Strict => "strict",
            PoolMode::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PoolCase<'a> {
    pub case: &'a Case,
    pub origin: &'a str,
    /// Position of the case within its origin dataset.
    pub origin_index: usize,
}

/// Source cases for one target, stable-indexed in corpus order.
#[derive(Debug, Clone)]
pub struct SourcePool<'a> {
    pub cases: Vec<PoolCase<'a>>,
    pub excluded_project: String,
    pub mode: PoolMode,
}

impl<'a> SourcePool<'a> {
    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    /// Source datasets contributing to the pool, in pool order.
    pub fn origins(&self) -> Vec<&'a str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.cases {
            if out.last() != Some(&c.origin) {
                out.push(c.origin);
            }
        }
        out
    }
}

/// Pool every case of every dataset whose project differs from the target's
/// (plus, in mixed mode, older releases of the target's own project).
pub fn build_pool<'a>(corpus: &'a Corpus, target: &str, mode: PoolMode) -> Result<SourcePool<'a>> {
    let target = corpus
        .get(target)
        .ok_or_else(|| Error::Usage(format!("target `{target}` is not in the corpus")))?;
    let mut cases = Vec::new();
    for dataset in corpus.datasets() {
        let admitted = if dataset.project != target.project {
            true
        } else {
            mode == PoolMode::Mixed
                && compare_releases(&dataset.release, &target.release) == Ordering::Less
        };
        if !admitted {
            continue;
        }
        cases.extend(dataset.cases.iter().enumerate().map(|(i, case)| PoolCase {
            case,
            origin: dataset.name.as_str(),
            origin_index: i,
        }));
    }
    if cases.is_empty() {
        return Err(Error::Usage(format!(
            "no source data outside project `{}`",
            target.project
        )));
    }
    Ok(SourcePool {
        cases,
        excluded_project: target.project.clone(),
        mode,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceSpace {
    /// Min-max scaled per metric over pool and target together.
    #[default]
    Normalized,
    Raw,
}

/// Pool and target cases as numeric rows in the distance space.
#[derive(Debug, Clone)]
pub struct FeatureSpace<T> {
    pub pool: Matrix<T>,
    pub target: Matrix<T>,
}

impl<T: Scalar> FeatureSpace<T> {
    pub fn build(pool: &SourcePool<'_>, target: &Dataset, space: DistanceSpace) -> Self {
        let pool = cases_to_matrix(pool.cases.iter().map(|p| p.case));
        let target = cases_to_matrix(target.cases.iter());
        Self::from_matrices(pool, target, space)
    }

    pub fn from_matrices(mut pool: Matrix<T>, mut target: Matrix<T>, space: DistanceSpace) -> Self {
        if space == DistanceSpace::Normalized {
            let cols = pool.ncols();
            let mut lo = vec![T::infinity(); cols];
            let mut hi = vec![T::neg_infinity(); cols];
            for row in pool.rows().chain(target.rows()) {
                for (j, &v) in row.iter().enumerate() {
                    lo[j] = lo[j].min(v);
                    hi[j] = hi[j].max(v);
                }
            }
            let rescale = |m: &mut Matrix<T>| {
                for i in 0..m.nrows() {
                    for (j, v) in m.row_mut(i).iter_mut().enumerate() {
                        let range = hi[j] - lo[j];
                        *v = if range > T::zero() {
                            (*v - lo[j]) / range
                        } else {
                            T::zero()
                        };
                    }
                }
            };
            rescale(&mut pool);
            rescale(&mut target);
        }
        FeatureSpace { pool, target }
    }
}

pub(crate) fn cases_to_matrix<'c, T: Scalar>(cases: impl Iterator<Item = &'c Case>) -> Matrix<T> {
    let mut m = Matrix::empty(METRIC_COUNT);
    for c in cases {
        m.push_row(&c.metrics.to_scalars::<T>())
            .expect("metric vectors have fixed length");
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::MetricVector;

    fn ds(name: &str, n: usize) -> Dataset {
        let cases = (0..n)
            .map(|i| Case::new("c", MetricVector::from_f64s(&[i as f64; 20]).unwrap(), 0))
            .collect();
        Dataset::new(name, cases)
    }

    fn corpus() -> Corpus {
        Corpus::new(vec![
            ds("ant1.7", 3),
            ds("camel1.0", 2),
            ds("camel1.2", 2),
            ds("camel1.4", 2),
            ds("camel1.6", 2),
            ds("xalan2.4", 4),
        ])
        .unwrap()
    }

    #[test]
    fn strict_pool_excludes_whole_project() {
        let c = corpus();
        let p = build_pool(&c, "camel1.2", PoolMode::Strict).unwrap();
        assert_eq!(p.origins(), ["ant1.7", "xalan2.4"]);
        assert_eq!(p.len(), 7);
        assert_eq!(p.excluded_project, "camel");
        let p = build_pool(&c, "ant1.7", PoolMode::Strict).unwrap();
        assert_eq!(p.len(), 12);
        assert!(p.cases.iter().all(|c| c.origin != "ant1.7"));
    }

    #[test]
    fn mixed_pool_admits_older_releases() {
        let c = corpus();
        let p = build_pool(&c, "camel1.4", PoolMode::Mixed).unwrap();
        assert_eq!(p.origins(), ["ant1.7", "camel1.0", "camel1.2", "xalan2.4"]);
    }

    #[test]
    fn single_project_corpus_has_no_pool() {
        let c = Corpus::new(vec![ds("camel1.0", 2), ds("camel1.2", 2)]).unwrap();
        assert!(matches!(
            build_pool(&c, "camel1.0", PoolMode::Strict),
            Err(Error::Usage(_))
        ));
        assert!(build_pool(&c, "nope", PoolMode::Strict).is_err());
    }

    #[test]
    fn normalization_uses_combined_extent() {
        let pool = Matrix::from_rows(&[vec![0.0, 5.0], vec![10.0, 5.0]]).unwrap();
        let target = Matrix::from_rows(&[vec![20.0, 5.0]]).unwrap();
        let s = FeatureSpace::<f64>::from_matrices(pool, target, DistanceSpace::Normalized);
        assert_eq!(s.pool.row(1), &[0.5, 0.0]);
        assert_eq!(s.target.row(0), &[1.0, 0.0]);
    }
}
