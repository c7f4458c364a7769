//! Binary decision tree on numeric features, split by gain ratio, with
//! optional error-based (pessimistic) pruning by subtree replacement.
//!
//! Each feature proposes its highest-gain threshold; among features whose
//! gain is at least the average, the highest gain ratio wins.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::TrainingMatrix;
use crate::scalar::{total_cmp, Scalar};

const MIN_GAIN: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// Minimum number of training rows on each side of a split.
    pub min_leaf: usize,
    pub prune: bool,
    /// Confidence level for the pessimistic error estimate.
    pub confidence: f64,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            min_leaf: 2,
            prune: true,
            confidence: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound = "T: Scalar")]
pub enum Node<T> {
    Leaf {
        /// Training rows per class, indexed by `Label as usize`.
        counts: [usize; 2],
    },
    Split {
        feature: usize,
        /// Rows with `value <= threshold` go left.
        threshold: T,
        left: usize,
        right: usize,
        counts: [usize; 2],
    },
}

impl<T> Node<T> {
    pub fn counts(&self) -> [usize; 2] {
        match self {
            Node::Leaf { counts } | Node::Split { counts, .. } => *counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DecisionTree<T> {
    feature_count: usize,
    /// Arena; the root is node 0.
    nodes: Vec<Node<T>>,
    config: TreeConfig,
}

fn entropy(counts: [usize; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

struct Candidate<T> {
    feature: usize,
    threshold: T,
    gain: f64,
    ratio: f64,
}

/// Grows a tree over a (possibly repeated) list of row indices.
///
/// Each feature keeps a contiguous `(value, row)` list sorted once at the
/// root. A node owns the same index range in every list; splitting stably
/// partitions that range in place, so no per-node allocation is needed.
pub(crate) struct Builder<'a, T, R> {
    data: &'a TrainingMatrix<T>,
    min_leaf: usize,
    /// Features tried per split; `None` tries all of them in order.
    features_per_split: Option<usize>,
    rng: Option<&'a mut R>,
    nodes: Vec<Node<T>>,
    sorted: Vec<Vec<(T, usize)>>,
    /// Side of each row under the split being applied.
    goes_left: Vec<bool>,
    scratch: Vec<(T, usize)>,
}

impl<'a, T: Scalar, R: Rng> Builder<'a, T, R> {
    pub(crate) fn new(
        data: &'a TrainingMatrix<T>,
        min_leaf: usize,
        features_per_split: Option<usize>,
        rng: Option<&'a mut R>,
    ) -> Self {
        Builder {
            data,
            min_leaf: min_leaf.max(1),
            features_per_split,
            rng,
            nodes: Vec::new(),
            sorted: Vec::new(),
            goes_left: Vec::new(),
            scratch: Vec::new(),
        }
    }

    pub(crate) fn build(mut self, rows: Vec<usize>) -> Vec<Node<T>> {
        let data = self.data;
        self.sorted = (0..data.feature_count())
            .map(|f| {
                let mut list: Vec<(T, usize)> = rows.iter().map(|&r| (data.features.row(r)[f], r)).collect();
                list.sort_by(|a, b| total_cmp(a.0, b.0).then(a.1.cmp(&b.1)));
                list
            })
            .collect();
        self.goes_left = vec![false; data.len()];
        self.scratch = Vec::with_capacity(rows.len());
        let counts = self.counts(&rows);
        self.grow(0, rows.len(), counts);
        self.nodes
    }

    fn counts(&self, rows: &[usize]) -> [usize; 2] {
        let mut c = [0; 2];
        for &r in rows {
            c[self.data.labels[r] as usize] += 1;
        }
        c
    }

    fn features(&mut self) -> Vec<usize> {
        let d = self.data.feature_count();
        match (self.features_per_split, self.rng.as_deref_mut()) {
            (Some(m), Some(rng)) if m < d => {
                let mut f = sample(rng, d, m).into_vec();
                f.sort_unstable();
                f
            }
            _ => (0..d).collect(),
        }
    }

    /// Highest-gain threshold of one feature (first on ties), or `None` when
    /// no admissible threshold has positive gain.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must not count as a gap
    fn best_threshold(&self, f: usize, sorted: &[(T, usize)], counts: [usize; 2], parent: f64) -> Option<Candidate<T>> {
        let labels = &self.data.labels;
        let n = sorted.len();
        let mut left = [0usize; 2];
        let mut best: Option<(usize, f64)> = None;
        let hi_end = n.saturating_sub(self.min_leaf);
        for i in 0..n - 1 {
            left[labels[sorted[i].1] as usize] += 1;
            let nl = i + 1;
            if nl < self.min_leaf || nl > hi_end || !(sorted[i].0 < sorted[i + 1].0) {
                continue;
            }
            let right = [counts[0] - left[0], counts[1] - left[1]];
            let (wl, wr) = (nl as f64 / n as f64, (n - nl) as f64 / n as f64);
            let gain = parent - wl * entropy(left) - wr * entropy(right);
            if gain > MIN_GAIN && best.is_none_or(|b| gain > b.1) {
                best = Some((i, gain));
            }
        }
        let (i, gain) = best?;
        let (lo, hi) = (sorted[i].0, sorted[i + 1].0);
        let wl = (i + 1) as f64 / n as f64;
        let wr = 1.0 - wl;
        let split_info = -(wl * wl.log2() + wr * wr.log2());
        let mut threshold = (lo + hi) / T::of(2.0);
        if !(threshold < hi) {
            threshold = lo;
        }
        Some(Candidate {
            feature: f,
            threshold,
            gain,
            ratio: gain / split_info,
        })
    }

    /// Best gain ratio among features whose gain reaches the average gain
    /// of all candidate features.
    fn best_split(&mut self, start: usize, end: usize, counts: [usize; 2]) -> Option<Candidate<T>> {
        let n = counts[0] + counts[1];
        if n < 2 * self.min_leaf {
            return None;
        }
        let parent = entropy(counts);
        let candidates: Vec<Candidate<T>> = self
            .features()
            .into_iter()
            .filter_map(|f| self.best_threshold(f, &self.sorted[f][start..end], counts, parent))
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let average = candidates.iter().map(|c| c.gain).sum::<f64>() / candidates.len() as f64;
        candidates
            .into_iter()
            .filter(|c| c.gain >= average - MIN_GAIN)
            .fold(None, |best: Option<Candidate<T>>, c| match best {
                Some(b) if b.ratio >= c.ratio => Some(b),
                _ => Some(c),
            })
    }

    /// Stable in-place partition of `[start, end)` in every feature list;
    /// returns the index where the right side begins.
    fn partition(&mut self, start: usize, end: usize, split: &Candidate<T>) -> usize {
        for &(v, r) in &self.sorted[split.feature][start..end] {
            self.goes_left[r] = v <= split.threshold;
        }
        let mut mid = start;
        for list in &mut self.sorted {
            self.scratch.clear();
            let mut w = start;
            for i in start..end {
                let e = list[i];
                if self.goes_left[e.1] {
                    list[w] = e;
                    w += 1;
                } else {
                    self.scratch.push(e);
                }
            }
            list[w..end].copy_from_slice(&self.scratch);
            mid = w;
        }
        mid
    }

    fn grow(&mut self, start: usize, end: usize, counts: [usize; 2]) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { counts });
        if counts[0] == 0 || counts[1] == 0 {
            return id;
        }
        let Some(split) = self.best_split(start, end, counts) else {
            return id;
        };
        let mid = self.partition(start, end, &split);
        let labels = &self.data.labels;
        let mut lc = [0usize; 2];
        for &(_, r) in &self.sorted[0][start..mid] {
            lc[labels[r] as usize] += 1;
        }
        let rc = [counts[0] - lc[0], counts[1] - lc[1]];
        let left = self.grow(start, mid, lc);
        let right = self.grow(mid, end, rc);
        self.nodes[id] = Node::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
            counts,
        };
        id
    }
}

/// Upper confidence bound on the error rate of a leaf with `errors` mistakes
/// out of `n`, normal approximation with continuity correction.
pub(crate) fn pessimistic_error_rate(n: usize, errors: usize, z: f64) -> f64 {
    let n = n as f64;
    let f = ((errors as f64 + 0.5) / n).min(1.0);
    let z2 = z * z;
    let num = f + z2 / (2.0 * n) + z * (f / n - f * f / n + z2 / (4.0 * n * n)).max(0.0).sqrt();
    (num / (1.0 + z2 / n)).min(1.0)
}

fn leaf_estimate(counts: [usize; 2], z: f64) -> f64 {
    let n = counts[0] + counts[1];
    if n == 0 {
        return 0.0;
    }
    n as f64 * pessimistic_error_rate(n, counts[0].min(counts[1]), z)
}

impl<T: Scalar> DecisionTree<T> {
    pub fn fit(data: &TrainingMatrix<T>, config: &TreeConfig) -> Self {
        let rows: Vec<usize> = (0..data.len()).collect();
        let nodes = Builder::<T, rand_chacha::ChaCha8Rng>::new(data, config.min_leaf, None, None)
            .build(rows);
        let mut tree = DecisionTree {
            feature_count: data.feature_count(),
            nodes,
            config: config.clone(),
        };
        if config.prune {
            tree.prune();
        }
        tree
    }

    pub(crate) fn from_nodes(feature_count: usize, nodes: Vec<Node<T>>, config: TreeConfig) -> Self {
        DecisionTree {
            feature_count,
            nodes,
            config,
        }
    }

    pub fn feature_count(&self) -> usize {
        self.feature_count
    }

    pub fn config(&self) -> &TreeConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn leaf_count(&self) -> usize {
        self.reachable()
            .iter()
            .filter(|&&i| matches!(self.nodes[i], Node::Leaf { .. }))
            .count()
    }

    pub fn depth(&self) -> usize {
        fn walk<T>(nodes: &[Node<T>], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    fn reachable(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            out.push(i);
            if let Node::Split { left, right, .. } = &self.nodes[i] {
                stack.push(*right);
                stack.push(*left);
            }
        }
        out
    }

    fn leaf_for(&self, row: &[T]) -> [usize; 2] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { counts } => return *counts,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => i = if row[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    /// Class frequency of the defective class in the reached leaf.
    pub fn defect_probability(&self, row: &[T]) -> T {
        let c = self.leaf_for(row);
        let n = c[0] + c[1];
        if n == 0 {
            return T::zero();
        }
        T::of_usize(c[1]) / T::of_usize(n)
    }

    /// Replace every subtree whose pessimistic error estimate is not lower
    /// than that of a single leaf, bottom-up. Subtree raising is not done.
    fn prune(&mut self) {
        let z = Normal::new(0.0, 1.0)
            .expect("standard normal")
            .inverse_cdf(1.0 - self.config.confidence);
        self.prune_node(0, z);
        self.compact();
    }

    fn prune_node(&mut self, i: usize, z: f64) -> f64 {
        let (left, right, counts) = match &self.nodes[i] {
            Node::Leaf { counts } => return leaf_estimate(*counts, z),
            Node::Split {
                left,
                right,
                counts,
                ..
            } => (*left, *right, *counts),
        };
        let subtree = self.prune_node(left, z) + self.prune_node(right, z);
        let as_leaf = leaf_estimate(counts, z);
        if as_leaf <= subtree {
            self.nodes[i] = Node::Leaf { counts };
            as_leaf
        } else {
            subtree
        }
    }

    /// Drop nodes no longer reachable from the root.
    fn compact(&mut self) {
        let order = self.reachable();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let nodes = order
            .iter()
            .map(|&old| match &self.nodes[old] {
                Node::Leaf { counts } => Node::Leaf { counts: *counts },
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    counts,
                } => Node::Split {
                    feature: *feature,
                    threshold: *threshold,
                    left: remap[*left],
                    right: remap[*right],
                    counts: *counts,
                },
            })
            .collect();
        self.nodes = nodes;
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;
    use crate::data::Label;
    use proptest::prelude::*;

    fn unpruned(min_leaf: usize) -> TreeConfig {
        TreeConfig {
            min_leaf,
            prune: false,
            ..TreeConfig::default()
        }
    }

    fn data(rows: &[[f64; 2]], labels: &[u64]) -> TrainingMatrix<f64> {
        TrainingMatrix::new(
            Matrix::from_rows(rows).unwrap(),
            labels.iter().map(|&b| Label::from_bug_count(b)).collect(),
        )
        .unwrap()
    }

    /// Gain ratio of every candidate split, computed independently of the
    /// builder: (feature, threshold, gain, ratio).
    fn enumerate_splits(d: &TrainingMatrix<f64>) -> Vec<(usize, f64, f64, f64)> {
        let h = |pos: f64, neg: f64| {
            let n = pos + neg;
            [pos, neg]
                .iter()
                .filter(|&&c| c > 0.0)
                .map(|&c| -(c / n) * (c / n).log2())
                .sum::<f64>()
        };
        let n = d.len() as f64;
        let pos = d.labels.iter().filter(|l| l.is_defective()).count() as f64;
        let mut out = Vec::new();
        for f in 0..d.feature_count() {
            let mut vals: Vec<f64> = d.features.rows().map(|r| r[f]).collect();
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            vals.dedup();
            for w in vals.windows(2) {
                let t = (w[0] + w[1]) / 2.0;
                let (mut lp, mut ln) = (0.0, 0.0);
                for (r, l) in d.features.rows().zip(&d.labels) {
                    if r[f] <= t {
                        if l.is_defective() {
                            lp += 1.0
                        } else {
                            ln += 1.0
                        }
                    }
                }
                let nl = lp + ln;
                let (rp, rn) = (pos - lp, n - pos - ln);
                let gain = h(pos, n - pos) - nl / n * h(lp, ln) - (n - nl) / n * h(rp, rn);
                let si = h(nl, n - nl);
                out.push((f, t, gain, gain / si));
            }
        }
        out
    }

    /// Per feature the first highest-gain threshold; then the first highest
    /// ratio among features with at least average gain.
    fn expected_root(splits: &[(usize, f64, f64, f64)]) -> (usize, f64, f64, f64) {
        let mut per_feature: Vec<(usize, f64, f64, f64)> = Vec::new();
        for s in splits.iter().filter(|s| s.2 > 1e-10) {
            match per_feature.iter_mut().find(|p| p.0 == s.0) {
                Some(p) if s.2 > p.2 => *p = *s,
                Some(_) => {}
                None => per_feature.push(*s),
            }
        }
        let avg = per_feature.iter().map(|p| p.2).sum::<f64>() / per_feature.len() as f64;
        let mut best: Option<(usize, f64, f64, f64)> = None;
        for p in per_feature.into_iter().filter(|p| p.2 >= avg - 1e-10) {
            if best.is_none_or(|b| p.3 > b.3) {
                best = Some(p);
            }
        }
        best.unwrap()
    }

    #[test]
    fn pure_data_is_a_single_leaf() {
        let d = data(&[[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]], &[1, 1, 1]);
        let m = DecisionTree::fit(&d, &TreeConfig::default());
        assert_eq!(m.nodes().len(), 1);
        assert_eq!(m.defect_probability(&[0.0, 0.0]), 1.0);
    }

    #[test]
    fn xor_style_needs_two_levels() {
        // feature 0 ordering reads - + + -: no single threshold separates it
        let d = data(&[[0.0, 1.0], [1.0, 3.0], [2.0, 0.0], [3.0, 2.0]], &[0, 1, 1, 0]);
        let splits = enumerate_splits(&d);
        assert!(splits.iter().all(|s| s.2 < 1.0 - 1e-9), "no perfect single split");
        let best = expected_root(&splits);
        let m = DecisionTree::fit(&d, &unpruned(1));
        match &m.nodes()[0] {
            Node::Split { feature, threshold, .. } => {
                assert_eq!((*feature, *threshold), (best.0, best.1));
            }
            leaf => panic!("root is {leaf:?}"),
        }
        assert_eq!(m.depth(), 2);
        assert_eq!(accuracy(&Model::DecisionTree(m), &d), 1.0);
    }

    #[test]
    fn balanced_xor_has_no_informative_split() {
        let d = data(&[[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]], &[0, 0, 1, 1]);
        assert!(enumerate_splits(&d).iter().all(|s| s.2.abs() < 1e-12));
        let m = DecisionTree::fit(&d, &unpruned(1));
        assert_eq!(m.nodes().len(), 1);
    }

    #[test]
    fn constant_features_give_majority_leaf() {
        let d = data(&[[1.0, 1.0]; 5], &[1, 0, 0, 1, 0]);
        let m = Model::DecisionTree(DecisionTree::fit(&d, &TreeConfig::default()));
        let p = m.predict(&Matrix::from_rows(&[[9.0, 9.0]]).unwrap()).unwrap();
        assert_eq!(p[0].label, Label::DefectFree);
        assert!((p[0].score - 0.4).abs() < 1e-12);
    }

    #[test]
    fn separable_fixture_is_learned() {
        let d = separable(4);
        let m = Model::DecisionTree(DecisionTree::fit(&d, &TreeConfig::default()));
        assert_eq!(accuracy(&m, &d), 1.0);
    }

    #[test]
    fn pruning_collapses_noise() {
        // 40 rows with one label flip per 10: pessimistic pruning keeps a small tree
        let rows: Vec<[f64; 2]> = (0..40).map(|i| [i as f64, (i * 7 % 13) as f64]).collect();
        let labels: Vec<u64> = (0..40).map(|i| u64::from(i % 10 == 3)).collect();
        let d = data(&rows, &labels);
        let full = DecisionTree::fit(&d, &unpruned(1));
        let pruned = DecisionTree::fit(&d, &TreeConfig::default());
        assert!(pruned.leaf_count() < full.leaf_count());
        assert_eq!(pruned.leaf_count(), 1);
    }

    #[test]
    fn pessimistic_bound_values() {
        let z = 0.6744897501960817;
        // zero observed errors still carry a positive estimate
        let r = pessimistic_error_rate(10, 0, z);
        assert!(r > 0.0 && r < 0.2, "{r}");
        assert!(pessimistic_error_rate(10, 5, z) > 0.5);
        assert!(pessimistic_error_rate(100, 0, z) < r);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn root_split_matches_oracle(
            rows in proptest::collection::vec(((0u8..6, 0u8..6), any::<bool>()), 3..30)
        ) {
            let feats: Vec<[f64; 2]> = rows.iter().map(|r| [f64::from(r.0 .0), f64::from(r.0 .1)]).collect();
            let labels: Vec<u64> = rows.iter().map(|r| u64::from(r.1)).collect();
            let d = data(&feats, &labels);
            let splits = enumerate_splits(&d);
            let m = DecisionTree::fit(&d, &unpruned(1));
            match &m.nodes()[0] {
                Node::Split { feature, threshold, .. } => {
                    let want = expected_root(&splits);
                    prop_assert_eq!((*feature, *threshold), (want.0, want.1));
                }
                Node::Leaf { counts } => {
                    prop_assert!(counts[0] == 0 || counts[1] == 0 || splits.iter().all(|s| s.2 <= 1e-10));
                }
            }
        }

        #[test]
        fn unique_rows_are_fit_exactly(
            rows in proptest::collection::btree_map(
                proptest::collection::vec(0u8..50, 20), any::<bool>(), 2..80)
        ) {
            let feats: Vec<Vec<f64>> = rows.keys().map(|r| r.iter().map(|&v| f64::from(v)).collect()).collect();
            let labels = rows.values().map(|&b| Label::from_bug_count(u64::from(b))).collect();
            let d = TrainingMatrix::new(Matrix::from_rows(&feats).unwrap(), labels).unwrap();
            let m = Model::DecisionTree(DecisionTree::fit(&d, &unpruned(1)));
            prop_assert_eq!(accuracy(&m, &d), 1.0);
        }
    }
}
