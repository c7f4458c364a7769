//! Experiment configuration in a line-based `key = value` format.
//!
//! `#` starts a comment. List values are comma separated and may be empty.
//! Every key is optional except `corpus_dir`; unknown or repeated keys are
//! errors.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use glob::Pattern;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learners::LearnerKind;
use crate::selection::{FilterKind, PoolMode, DEFAULT_NEIGHBORS};

/// Which datasets act as prediction targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSpec {
    All,
    /// Dataset names or `*`/`?` glob patterns.
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub corpus_dir: PathBuf,
    pub targets: TargetSpec,
    /// Glob patterns removed from the target list.
    pub exclude: Vec<String>,
    pub filters: Vec<FilterKind>,
    pub learners: Vec<LearnerKind>,
    pub seed: u64,
    pub burak_k: usize,
    /// `None` picks the cluster count from the pool size.
    pub peters_clusters: Option<usize>,
    pub normalization: bool,
    pub pool_mode: PoolMode,
    /// Per-dataset case cap, applied by stratified subsampling before cleaning.
    pub sample_cap: Option<usize>,
    pub forest_trees: usize,
    /// Evaluate the cleaned variant on the original target instead of the
    /// cleaned one.
    pub clean_pool_only: bool,
}

impl ExperimentConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            corpus_dir: corpus_dir.into(),
            targets: TargetSpec::All,
            exclude: Vec::new(),
            filters: FilterKind::ALL.to_vec(),
            learners: LearnerKind::ALL.to_vec(),
            seed: 0,
            burak_k: DEFAULT_NEIGHBORS,
            peters_clusters: None,
            normalization: true,
            pool_mode: PoolMode::Strict,
            sample_cap: None,
            forest_trees: 100,
            clean_pool_only: false,
        }
    }

    /// Parse a config file; a relative `corpus_dir` is resolved against the
    /// file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::parse(&text)?;
        if config.corpus_dir.is_relative() {
            if let Some(dir) = path.parent() {
                config.corpus_dir = dir.join(&config.corpus_dir);
            }
        }
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut config = ExperimentConfig::new("");
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(err(format!("`{key}` given twice")));
            }
            config.set(key, value).map_err(|e| match e {
                Error::Usage(m) | Error::Config { message: m, .. } => err(m),
                other => err(other.to_string()),
            })?;
        }
        if !seen.contains("corpus_dir") {
            return Err(Error::Config {
                line: 0,
                message: "`corpus_dir` is required".into(),
            });
        }
        Ok(config)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "corpus_dir" => {
                if value.is_empty() {
                    return Err(Error::Usage("`corpus_dir` is empty".into()));
                }
                self.corpus_dir = PathBuf::from(value);
            }
            "targets" => {
                self.targets = if value.eq_ignore_ascii_case("all") {
                    TargetSpec::All
                } else {
                    TargetSpec::List(patterns(value)?)
                };
            }
            "exclude" => self.exclude = patterns(value)?,
            "filters" => self.filters = list(value)?,
            "learners" => self.learners = list(value)?,
            "seed" => self.seed = number(value)?,
            "burak_k" => self.burak_k = positive(value)?,
            "peters_clusters" => {
                self.peters_clusters = if value.eq_ignore_ascii_case("auto") {
                    None
                } else {
                    Some(positive(value)?)
                };
            }
            "normalization" => self.normalization = flag(value)?,
            "pool_mode" => self.pool_mode = value.to_ascii_lowercase().parse()?,
            "sample_cap" => {
                self.sample_cap = if value.eq_ignore_ascii_case("none") {
                    None
                } else {
                    Some(positive(value)?)
                };
            }
            "forest_trees" => self.forest_trees = positive(value)?,
            "clean_pool_only" => self.clean_pool_only = flag(value)?,
            other => return Err(Error::Usage(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Canonical text form; parsing it gives back an equal config.
    pub fn to_text(&self) -> String {
        let names = |v: &[String]| v.join(", ");
        let mut s = String::new();
        let _ = writeln!(s, "corpus_dir = {}", self.corpus_dir.display());
        let targets = match &self.targets {
            TargetSpec::All => "all".to_string(),
            TargetSpec::List(v) => names(v),
        };
        let _ = writeln!(s, "targets = {targets}");
        let _ = writeln!(s, "exclude = {}", names(&self.exclude));
        let filters: Vec<String> = self.filters.iter().map(|f| f.name().to_string()).collect();
        let _ = writeln!(s, "filters = {}", names(&filters));
        let learners: Vec<String> = self.learners.iter().map(|l| l.name().to_string()).collect();
        let _ = writeln!(s, "learners = {}", names(&learners));
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "burak_k = {}", self.burak_k);
        let clusters = self.peters_clusters.map_or("auto".to_string(), |c| c.to_string());
        let _ = writeln!(s, "peters_clusters = {clusters}");
        let _ = writeln!(s, "normalization = {}", self.normalization);
        let _ = writeln!(s, "pool_mode = {}", self.pool_mode);
        let cap = self.sample_cap.map_or("none".to_string(), |c| c.to_string());
        let _ = writeln!(s, "sample_cap = {cap}");
        let _ = writeln!(s, "forest_trees = {}", self.forest_trees);
        let _ = writeln!(s, "clean_pool_only = {}", self.clean_pool_only);
        s
    }

    /// Target names in corpus order: selected by `targets`, minus `exclude`.
    /// A literal name that is not in the corpus is an error.
    pub fn resolve_targets<'a>(&self, names: impl IntoIterator<Item = &'a str> + Clone) -> Result<Vec<String>> {
        let compile = |p: &String| {
            Pattern::new(p).map_err(|e| Error::Usage(format!("bad pattern `{p}`: {e}")))
        };
        let exclude = self.exclude.iter().map(compile).collect::<Result<Vec<_>>>()?;
        let include = match &self.targets {
            TargetSpec::All => None,
            TargetSpec::List(list) => {
                for p in list.iter().filter(|p| !is_glob(p)) {
                    if !names.clone().into_iter().any(|n| n == p) {
                        return Err(Error::Usage(format!("target `{p}` is not in the corpus")));
                    }
                }
                Some(list.iter().map(compile).collect::<Result<Vec<_>>>()?)
            }
        };
        Ok(names
            .into_iter()
            .filter(|n| include.as_ref().is_none_or(|inc| inc.iter().any(|p| p.matches(n))))
            .filter(|n| !exclude.iter().any(|p| p.matches(n)))
            .map(str::to_string)
            .collect())
    }
}

fn is_glob(p: &str) -> bool {
    p.contains(['*', '?', '['])
}

fn items(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn patterns(value: &str) -> Result<Vec<String>> {
    items(value)
        .map(|p| {
            Pattern::new(p)
                .map(|_| p.to_ascii_lowercase())
                .map_err(|e| Error::Usage(format!("bad pattern `{p}`: {e}")))
        })
        .collect()
}

/// Parses a list, dropping repeats but keeping first-seen order.
fn list<T: FromStr<Err = Error> + PartialEq>(value: &str) -> Result<Vec<T>> {
    let mut out: Vec<T> = Vec::new();
    for item in items(value) {
        let v = item.parse()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

fn number(value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::Usage(format!("expected a non-negative integer, got `{value}`")))
}

fn positive(value: &str) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Usage(format!("expected a positive integer, got `{value}`"))),
    }
}

fn flag(value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Usage(format!("expected true or false, got `{value}`"))),
    }
}
