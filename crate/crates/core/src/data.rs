//! PROMISE-schema defect datasets: parsing, canonical re-serialization and
//! corpus loading.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const METRIC_COUNT: usize = 20;

pub const METRIC_NAMES: [&str; METRIC_COUNT] = [
    "wmc", "dit", "noc", "cbo", "rfc", "lcom", "ca", "ce", "npm", "lcom3", "loc", "dam", "moa",
    "mfa", "cam", "ic", "cbm", "amc", "max_cc", "avg_cc",
];

/// Column layout of a PROMISE class-level CSV. The `name` column appears twice:
/// first the project name, then the class name.
pub const PROMISE_HEADER: [&str; METRIC_COUNT + 4] = [
    "name", "version", "name", "wmc", "dit", "noc", "cbo", "rfc", "lcom", "ca", "ce", "npm",
    "lcom3", "loc", "dam", "moa", "mfa", "cam", "ic", "cbm", "amc", "max_cc", "avg_cc", "bug",
];

/// Dataset names whose project cannot be read off the alphabetic prefix.
/// Longest matching prefix wins; the remainder becomes the release.
const PROJECT_ALIASES: &[(&str, &str)] = &[("xercesinit", "xerces"), ("log4j", "log4j")];

/// The 20 static code metrics of one class, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetricVector {
    values: Vec<Decimal>,
}

impl MetricVector {
    pub fn new(values: Vec<Decimal>) -> Result<Self> {
        if values.len() != METRIC_COUNT {
            return Err(Error::Schema(format!(
                "metric vector needs {METRIC_COUNT} values, got {}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(Decimal::is_negative) {
            return Err(Error::InvalidDecimal(format!(
                "{} = {} is negative",
                METRIC_NAMES[pos], values[pos]
            )));
        }
        Ok(MetricVector { values })
    }

    pub fn parse<S: AsRef<str>>(cells: &[S]) -> Result<Self> {
        let values = cells
            .iter()
            .map(|c| Decimal::parse(c.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    /// Convenience for fixtures: parse from `f64`s via their shortest
    /// round-trip representation.
    pub fn from_f64s(values: &[f64]) -> Result<Self> {
        let cells: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
        Self::parse(&cells)
    }

    pub fn values(&self) -> &[Decimal] {
        &self.values
    }

    pub fn to_scalars<T: Scalar>(&self) -> Vec<T> {
        self.values.iter().map(|d| T::of(d.to_f64())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    DefectFree,
    Defective,
}

impl Label {
    pub fn from_bug_count(bugs: u64) -> Self {
        if bugs >= 1 {
            Label::Defective
        } else {
            Label::DefectFree
        }
    }

    pub fn is_defective(self) -> bool {
        self == Label::Defective
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::Defective => Label::DefectFree,
            Label::DefectFree => Label::Defective,
        }
    }
}

/// One Java class of a release.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    /// Raw value of the leading `name` column (the project as written in the file).
    pub project_field: String,
    pub version_field: String,
    pub class_name: String,
    pub metrics: MetricVector,
    pub bug_count: u64,
    pub label: Label,
}

impl Case {
    pub fn new(class_name: impl Into<String>, metrics: MetricVector, bug_count: u64) -> Self {
        Case {
            project_field: String::new(),
            version_field: String::new(),
            class_name: class_name.into(),
            metrics,
            bug_count,
            label: Label::from_bug_count(bug_count),
        }
    }
}

/// A named release of a project.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    pub project: String,
    pub release: String,
    pub name: String,
    pub cases: Vec<Case>,
}

impl Dataset {
    /// Build a dataset, deriving project and release from `name`.
    pub fn new(name: impl Into<String>, cases: Vec<Case>) -> Self {
        let name = name.into();
        let (project, release) = split_dataset_name(&name);
        Dataset {
            project,
            release,
            name,
            cases,
        }
    }

    /// Same identity, different cases.
    pub fn with_cases(&self, cases: Vec<Case>) -> Self {
        Dataset {
            project: self.project.clone(),
            release: self.release.clone(),
            name: self.name.clone(),
            cases,
        }
    }

    pub fn case_count(&self) -> usize {
        self.cases.len()
    }

    pub fn defective_count(&self) -> usize {
        self.cases.iter().filter(|c| c.label.is_defective()).count()
    }

    /// 0 for an empty dataset.
    pub fn defective_ratio(&self) -> f64 {
        if self.cases.is_empty() {
            0.0
        } else {
            self.defective_count() as f64 / self.case_count() as f64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }
}

/// Split a dataset name such as `xalan2.4` into `("xalan", "2.4")`.
///
/// The project is the maximal leading alphabetic prefix unless a name in the
/// alias table matches first (`log4j1.2` → `log4j`, `xercesinit` → `xerces`).
/// `prop1` … `prop6` therefore form one project `prop`.
pub fn split_dataset_name(name: &str) -> (String, String) {
    let lower = name.to_ascii_lowercase();
    let alias = PROJECT_ALIASES
        .iter()
        .filter(|(prefix, _)| lower.starts_with(prefix))
        .max_by_key(|(prefix, _)| prefix.len());
    if let Some((prefix, project)) = alias {
        let rest = &name[prefix.len()..];
        let release = if rest.is_empty() && *prefix != *project {
            prefix[project.len().min(prefix.len())..].to_string()
        } else {
            rest.to_string()
        };
        return (project.to_string(), release);
    }
    let split = name
        .char_indices()
        .find(|(_, c)| !c.is_ascii_alphabetic())
        .map(|(i, _)| i)
        .unwrap_or(name.len());
    (name[..split].to_ascii_lowercase(), name[split..].to_string())
}

/// Order releases as dotted version numbers; non-numeric parts sort after
/// numeric ones (`1.4` < `init`).
pub fn compare_releases(a: &str, b: &str) -> Ordering {
    if a.is_empty() || b.is_empty() {
        // an empty release sorts first
        return a.len().min(1).cmp(&b.len().min(1));
    }
    let mut left = a.split('.');
    let mut right = b.split('.');
    loop {
        match (left.next(), right.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = match (x.parse::<u64>(), y.parse::<u64>()) {
                    (Ok(p), Ok(q)) => p.cmp(&q),
                    (Ok(_), Err(_)) => Ordering::Less,
                    (Err(_), Ok(_)) => Ordering::Greater,
                    (Err(_), Err(_)) => x.cmp(y),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

/// Dataset name encoded by a CSV file name: lower-cased stem with `-` and `_`
/// removed, so `ant-1.7.csv` and `ant1.7.csv` both give `ant1.7`.
pub fn dataset_name_from_path(path: &Path) -> Option<String> {
    let file = path.file_name()?.to_str()?;
    let stem = file
        .strip_suffix(".csv")
        .or_else(|| file.strip_suffix(".CSV"))?;
    Some(
        stem.chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase(),
    )
}

fn header_matches(found: &str, expected: &str) -> bool {
    let found = found.trim().trim_start_matches('\u{feff}').to_ascii_lowercase();
    found == expected || (expected == "name" && found == "name.1")
}

/// Parse a PROMISE CSV. `expected_schema` is the column list the header must
/// match position by position; pass [`PROMISE_HEADER`] for the standard layout.
pub fn parse_dataset<R: Read>(source: R, name: &str, expected_schema: &[&str]) -> Result<Dataset> {
    let metric_cols: Vec<usize> = METRIC_NAMES
        .iter()
        .map(|m| expected_schema.iter().position(|c| c == m))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Schema("expected schema lacks a metric column".into()))?;
    let name_cols: Vec<usize> = expected_schema
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == "name")
        .map(|(i, _)| i)
        .collect();
    let version_col = expected_schema.iter().position(|c| *c == "version");
    let bug_col = expected_schema
        .iter()
        .position(|c| *c == "bug")
        .ok_or_else(|| Error::Schema("expected schema lacks the `bug` column".into()))?;
    let class_col = *name_cols
        .last()
        .ok_or_else(|| Error::Schema("expected schema lacks a `name` column".into()))?;
    let project_col = (name_cols.len() > 1).then(|| name_cols[0]);

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::EmptyDataset(name.to_string())),
        Some(h) => h?,
    };
    for (i, expected) in expected_schema.iter().enumerate() {
        match header.get(i) {
            None => return Err(Error::Schema(format!("missing column `{expected}`"))),
            Some(found) if !header_matches(found, expected) => {
                return Err(Error::Schema(format!(
                    "column {} should be `{expected}`, found `{}`",
                    i + 1,
                    found.trim()
                )))
            }
            Some(_) => {}
        }
    }
    if header.len() > expected_schema.len() {
        return Err(Error::Schema(format!(
            "extra column `{}`",
            header[expected_schema.len()].trim()
        )));
    }

    let mut cases = Vec::new();
    for (row, record) in records.enumerate() {
        let record = record?;
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != expected_schema.len() {
            let column = expected_schema
                .get(record.len())
                .copied()
                .unwrap_or("<extra>");
            return Err(Error::Parse {
                row,
                column: column.to_string(),
                message: format!(
                    "expected {} fields, found {}",
                    expected_schema.len(),
                    record.len()
                ),
            });
        }
        let mut values = Vec::with_capacity(METRIC_COUNT);
        for (m, &col) in metric_cols.iter().enumerate() {
            let value = Decimal::parse(&record[col]).map_err(|e| Error::Parse {
                row,
                column: METRIC_NAMES[m].to_string(),
                message: e.to_string(),
            })?;
            values.push(value);
        }
        let metrics = MetricVector::new(values).map_err(|e| Error::Parse {
            row,
            column: "metrics".into(),
            message: e.to_string(),
        })?;
        let bug_count = parse_bug_count(&record[bug_col]).ok_or_else(|| Error::Parse {
            row,
            column: "bug".into(),
            message: format!("`{}` is not a non-negative integer", &record[bug_col]),
        })?;
        cases.push(Case {
            project_field: project_col.map(|c| record[c].to_string()).unwrap_or_default(),
            version_field: version_col.map(|c| record[c].to_string()).unwrap_or_default(),
            class_name: record[class_col].to_string(),
            metrics,
            bug_count,
            label: Label::from_bug_count(bug_count),
        });
    }
    if cases.is_empty() {
        return Err(Error::EmptyDataset(name.to_string()));
    }
    Ok(Dataset::new(name, cases))
}

fn parse_bug_count(cell: &str) -> Option<u64> {
    let d = Decimal::parse(cell).ok()?;
    if d.is_negative() {
        return None;
    }
    let v = d.to_f64();
    (v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
}

/// Write `dataset` back in PROMISE layout with canonical metric values.
pub fn write_dataset<W: Write>(sink: W, dataset: &Dataset) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().from_writer(sink);
    writer.write_record(PROMISE_HEADER)?;
    for case in &dataset.cases {
        let mut row: Vec<String> = Vec::with_capacity(PROMISE_HEADER.len());
        row.push(case.project_field.clone());
        row.push(case.version_field.clone());
        row.push(case.class_name.clone());
        row.extend(case.metrics.values().iter().map(Decimal::to_string));
        row.push(case.bug_count.to_string());
        writer.write_record(&row)?;
    }
    writer.flush().map_err(|e| Error::io("<csv sink>", e))?;
    Ok(())
}

/// Read one CSV file; the dataset name comes from the file name.
pub fn read_dataset_file(path: &Path) -> Result<Dataset> {
    let name = dataset_name_from_path(path)
        .ok_or_else(|| Error::Corpus(format!("{} is not a .csv file", path.display())))?;
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(file, &name, &PROMISE_HEADER).map_err(|e| Error::InFile {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

/// A set of uniquely named datasets, ordered by project then release.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    datasets: Vec<Dataset>,
    index: HashMap<String, usize>,
    projects: BTreeMap<String, Vec<String>>,
}

impl Corpus {
    pub fn new(mut datasets: Vec<Dataset>) -> Result<Self> {
        datasets.sort_by(|a, b| {
            a.project
                .cmp(&b.project)
                .then_with(|| compare_releases(&a.release, &b.release))
                .then_with(|| a.name.cmp(&b.name))
        });
        let mut index = HashMap::with_capacity(datasets.len());
        let mut projects: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, d) in datasets.iter().enumerate() {
            if index.insert(d.name.clone(), i).is_some() {
                return Err(Error::Corpus(format!("duplicate dataset name `{}`", d.name)));
            }
            projects
                .entry(d.project.clone())
                .or_default()
                .push(d.name.clone());
        }
        Ok(Corpus {
            datasets,
            index,
            projects,
        })
    }

    pub fn datasets(&self) -> &[Dataset] {
        &self.datasets
    }

    pub fn get(&self, name: &str) -> Option<&Dataset> {
        self.index.get(name).map(|&i| &self.datasets[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Project name → dataset names in release order.
    pub fn projects(&self) -> &BTreeMap<String, Vec<String>> {
        &self.projects
    }

    pub fn releases(&self, project: &str) -> Vec<&Dataset> {
        self.projects
            .get(project)
            .map(|names| names.iter().filter_map(|n| self.get(n)).collect())
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.datasets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.datasets.is_empty()
    }

    pub fn into_datasets(self) -> Vec<Dataset> {
        self.datasets
    }
}

/// Load every `*.csv` in `directory`, optionally restricted to `manifest`.
/// Every manifest entry must be present.
pub fn load_corpus(directory: &Path, manifest: Option<&[String]>) -> Result<Corpus> {
    let entries = std::fs::read_dir(directory).map_err(|e| Error::io(directory, e))?;
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(directory, e))?.path();
        if !path.is_file() {
            continue;
        }
        if let Some(name) = dataset_name_from_path(&path) {
            files.push((name, path));
        }
    }
    files.sort();
    if let Some(wanted) = manifest {
        for w in wanted {
            if !files.iter().any(|(n, _)| n == w) {
                return Err(Error::Corpus(format!(
                    "dataset `{w}` not found in {}",
                    directory.display()
                )));
            }
        }
        files.retain(|(n, _)| wanted.contains(n));
    }
    let datasets = files
        .par_iter()
        .map(|(_, path)| read_dataset_file(path))
        .collect::<Result<Vec<_>>>()?;
    Corpus::new(datasets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn header() -> String {
        PROMISE_HEADER.join(",")
    }

    fn row(class: &str, metric: &str, bug: &str) -> String {
        let metrics = vec![metric; METRIC_COUNT].join(",");
        format!("ant,1.7,{class},{metrics},{bug}")
    }

    #[test]
    fn single_clean_row() {
        let csv = format!("{}\n{}\n", header(), row("a.B", "1", "0"));
        let d = parse_dataset(csv.as_bytes(), "ant1.7", &PROMISE_HEADER).unwrap();
        assert_eq!(d.case_count(), 1);
        assert_eq!(d.defective_count(), 0);
        assert_eq!(d.defective_ratio(), 0.0);
        assert_eq!(d.project, "ant");
        assert_eq!(d.release, "1.7");
    }

    #[test]
    fn bug_count_binarizes() {
        let csv = format!("{}\n{}\n", header(), row("a.B", "2.50", "3"));
        let d = parse_dataset(csv.as_bytes(), "ant1.7", &PROMISE_HEADER).unwrap();
        let c = &d.cases[0];
        assert_eq!(c.label, Label::Defective);
        assert_eq!(c.bug_count, 3);
        assert_eq!(c.class_name, "a.B");
        assert_eq!(c.metrics.values()[0].to_string(), "2.5");
    }

    #[test]
    fn empty_file_is_an_error() {
        let err = parse_dataset("".as_bytes(), "x", &PROMISE_HEADER).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset(_)));
        let csv = format!("{}\n", header());
        let err = parse_dataset(csv.as_bytes(), "x", &PROMISE_HEADER).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset(_)));
    }

    #[test]
    fn missing_and_extra_columns_are_named() {
        let short = PROMISE_HEADER[..PROMISE_HEADER.len() - 1].join(",");
        let err = parse_dataset(short.as_bytes(), "x", &PROMISE_HEADER).unwrap_err();
        assert!(err.to_string().contains("`bug`"), "{err}");

        let long = format!("{},extra", header());
        let err = parse_dataset(long.as_bytes(), "x", &PROMISE_HEADER).unwrap_err();
        assert!(err.to_string().contains("`extra`"), "{err}");

        let renamed = header().replace("loc", "lines");
        let err = parse_dataset(renamed.as_bytes(), "x", &PROMISE_HEADER).unwrap_err();
        assert!(err.to_string().contains("`loc`"), "{err}");
    }

    #[test]
    fn non_numeric_metric_reports_row() {
        let bad = row("c", "1", "0").replacen(",1,", ",x,", 1);
        let csv = format!("{}\n{}\n{}\n", header(), row("a", "1", "0"), bad);
        match parse_dataset(csv.as_bytes(), "x", &PROMISE_HEADER).unwrap_err() {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 1);
                assert_eq!(column, "wmc");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn pandas_style_duplicate_name_is_tolerated() {
        let h = header().replacen("name,version,name", "name,version,name.1", 1);
        let csv = format!("{h}\n{}\n", row("a", "1", "1"));
        assert!(parse_dataset(csv.as_bytes(), "x", &PROMISE_HEADER).is_ok());
    }

    #[test]
    fn rewrite_then_parse_is_lossless() {
        let csv = format!(
            "{}\n{}\n{}\n",
            header(),
            row("a.B", "1.000", "0"),
            row("a.C", "0.50", "2")
        );
        let d = parse_dataset(csv.as_bytes(), "ant1.7", &PROMISE_HEADER).unwrap();
        let mut out = Vec::new();
        write_dataset(&mut out, &d).unwrap();
        let again = parse_dataset(out.as_slice(), "ant1.7", &PROMISE_HEADER).unwrap();
        assert_eq!(d, again);
        assert!(String::from_utf8(out).unwrap().starts_with(&header()));
    }

    #[test]
    fn naming_rule() {
        assert_eq!(split_dataset_name("jedit4.3"), ("jedit".into(), "4.3".into()));
        assert_eq!(split_dataset_name("xalan2.4"), ("xalan".into(), "2.4".into()));
        assert_eq!(split_dataset_name("log4j1.2"), ("log4j".into(), "1.2".into()));
        assert_eq!(split_dataset_name("xercesinit"), ("xerces".into(), "init".into()));
        assert_eq!(split_dataset_name("prop6"), ("prop".into(), "6".into()));
        assert_eq!(split_dataset_name("berek"), ("berek".into(), "".into()));
        assert_eq!(
            dataset_name_from_path(Path::new("/x/Xalan-2.4.csv")).as_deref(),
            Some("xalan2.4")
        );
    }

    #[test]
    fn naming_rule_groups_published_releases_into_32_projects() {
        let datasets: Vec<Dataset> = reference::DATASETS
            .iter()
            .map(|p| Dataset::new(p.name, Vec::new()))
            .collect();
        let corpus = Corpus::new(datasets).unwrap();
        assert_eq!(corpus.len(), 65);
        assert_eq!(corpus.projects().len(), 32);
        let names = |p: &str| corpus.projects()[p].clone();
        assert_eq!(names("camel"), ["camel1.0", "camel1.2", "camel1.4", "camel1.6"]);
        assert_eq!(names("xerces"), ["xerces1.2", "xerces1.3", "xerces1.4", "xercesinit"]);
        assert_eq!(names("prop").len(), 6);
        assert_eq!(names("log4j").len(), 3);
        // every published release pair refers to releases of one project, older first
        for pair in reference::PAIRS.iter() {
            let a = corpus.get(pair.older).unwrap();
            let b = corpus.get(pair.newer).unwrap();
            assert_eq!(a.project, b.project, "{pair:?}");
            assert_eq!(compare_releases(&a.release, &b.release), Ordering::Less);
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let a = Dataset::new("ant1.7", Vec::new());
        assert!(matches!(
            Corpus::new(vec![a.clone(), a]).unwrap_err(),
            Error::Corpus(_)
        ));
    }

    #[test]
    fn release_ordering() {
        assert_eq!(compare_releases("1.2", "1.10"), Ordering::Less);
        assert_eq!(compare_releases("1.4", "init"), Ordering::Less);
        assert_eq!(compare_releases("", "1"), Ordering::Less);
    }

    #[test]
    fn load_corpus_with_manifest() {
        let dir = tempfile::tempdir().unwrap();
        for (file, project) in [("berek.csv", "berek"), ("ant-1.7.csv", "ant")] {
            let csv = format!("{}\n{}\n", header(), row("a", "1", "0")).replacen("ant", project, 1);
            std::fs::write(dir.path().join(file), csv).unwrap();
        }
        let all = load_corpus(dir.path(), None).unwrap();
        assert_eq!(all.len(), 2);
        let only = load_corpus(dir.path(), Some(&["berek".to_string()])).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only.get("berek").is_some());
        assert!(load_corpus(dir.path(), Some(&["nope".to_string()])).is_err());
    }

    #[test]
    fn unreadable_file_names_path() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("bad.csv"), "garbage\n").unwrap();
        let err = load_corpus(dir.path(), None).unwrap_err();
        assert!(err.to_string().contains("bad.csv"), "{err}");
        assert!(matches!(err, Error::InFile { ref source, .. } if matches!(**source, Error::Schema(_))));
        let err = read_dataset_file(&dir.path().join("missing.csv")).unwrap_err();
        assert!(err.to_string().contains("missing.csv"));
    }
}
