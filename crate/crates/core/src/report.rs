//! Corpus statistics and report serialization.
//!
//! Records are folded into a [`PartialSummary`], which merges associatively,
//! so files can be summarized independently and combined in any grouping.
//! Quantiles are only computed in [`PartialSummary::finish`], from the
//! retained raw scores.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antipattern::{Finding, RuleId, Severity};
use crate::category::{MessageCategory, SubCategory, TopCategory};
use crate::pos::{PatternCounts, PatternTable, PosTag};
use crate::readability::{self, round_score, TextMetrics};
use crate::source::Position;

pub const SCHEMA: &str = "assert-msg-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssertionRecord {
    pub project: String,
    pub file: String,
    pub location: Position,
    pub assert_kind: String,
    pub enclosing_class: String,
    pub enclosing_method: String,
    pub enclosing_method_location: Position,
    pub in_test_method: bool,
    pub has_message: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rendered: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<MessageCategory>,
    /// Set when a message exists but fits no category.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unclassifiable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<TextMetrics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos_tags: Option<Vec<PosTag>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos_prefixes: Option<Vec<Vec<PosTag>>>,
    #[serde(default)]
    pub findings: Vec<Finding>,
}

impl AssertionRecord {
    fn method_key(&self) -> String {
        format!(
            "{}#{}.{}@{}",
            self.file, self.enclosing_class, self.enclosing_method, self.enclosing_method_location
        )
    }
}

/// Per-file facts that do not come from assertion records.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileFacts {
    pub project: String,
    pub is_test_file: bool,
    pub test_classes: u64,
    pub parse_errors: u64,
    pub unknown_overloads: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct ProjectAcc {
    files: u64,
    test_files: u64,
    test_classes: u64,
    methods_with_asserts: BTreeSet<String>,
    methods_with_messages: BTreeSet<String>,
    with_message: u64,
    without_message: u64,
}

impl ProjectAcc {
    fn merge(&mut self, other: &ProjectAcc) {
        self.files += other.files;
        self.test_files += other.test_files;
        self.test_classes += other.test_classes;
        self.methods_with_asserts.extend(other.methods_with_asserts.iter().cloned());
        self.methods_with_messages.extend(other.methods_with_messages.iter().cloned());
        self.with_message += other.with_message;
        self.without_message += other.without_message;
    }
}

type Counts = BTreeMap<String, u64>;

fn add_counts(into: &mut Counts, from: &Counts) {
    for (k, n) in from {
        *into.entry(k.clone()).or_default() += n;
    }
}

/// Merge-safe accumulator.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialSummary {
    projects: BTreeMap<String, ProjectAcc>,
    parse_errors: u64,
    unknown_overloads: u64,
    kinds_all: Counts,
    kinds_with_message: Counts,
    categories: BTreeMap<TopCategory, u64>,
    sub_categories: BTreeMap<(TopCategory, SubCategory), u64>,
    unclassifiable: u64,
    unscorable: u64,
    reading_ease: BTreeMap<TopCategory, Vec<f64>>,
    grade: BTreeMap<TopCategory, Vec<f64>>,
    unigrams: BTreeMap<String, Counts>,
    bigrams: BTreeMap<String, Counts>,
    patterns: PatternCounts,
    findings: BTreeMap<RuleId, u64>,
}

impl PartialSummary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a scanned file, so that projects without assertions still count.
    pub fn add_file(&mut self, facts: &FileFacts) {
        let p = self.projects.entry(facts.project.clone()).or_default();
        p.files += 1;
        p.test_files += u64::from(facts.is_test_file);
        p.test_classes += facts.test_classes;
        self.parse_errors += facts.parse_errors;
        self.unknown_overloads += facts.unknown_overloads;
    }

    pub fn add(&mut self, record: &AssertionRecord) {
        let project = self.projects.entry(record.project.clone()).or_default();
        let key = record.method_key();
        project.methods_with_asserts.insert(key.clone());
        *self.kinds_all.entry(record.assert_kind.clone()).or_default() += 1;
        for f in &record.findings {
            *self.findings.entry(f.rule_id).or_default() += 1;
        }
        if !record.has_message {
            project.without_message += 1;
            return;
        }
        project.with_message += 1;
        project.methods_with_messages.insert(key);
        *self.kinds_with_message.entry(record.assert_kind.clone()).or_default() += 1;

        if let Some(text) = &record.rendered {
            let words: Vec<String> = readability::segment(text)
                .words
                .iter()
                .map(|w| w.to_lowercase())
                .collect();
            let uni = self.unigrams.entry(record.assert_kind.clone()).or_default();
            for w in &words {
                *uni.entry(w.clone()).or_default() += 1;
            }
            let bi = self.bigrams.entry(record.assert_kind.clone()).or_default();
            for pair in words.windows(2) {
                *bi.entry(format!("{}_{}", pair[0], pair[1])).or_default() += 1;
            }
        }

        let Some(category) = record.category else {
            self.unclassifiable += 1;
            return;
        };
        *self.categories.entry(category.top).or_default() += 1;
        if let Some(sub) = category.sub {
            *self.sub_categories.entry((category.top, sub)).or_default() += 1;
        }
        match record.metrics.as_ref() {
            Some(TextMetrics { flesch_reading_ease: Some(fre), fk_grade: Some(fk), .. }) => {
                self.reading_ease.entry(category.top).or_default().push(*fre);
                self.grade.entry(category.top).or_default().push(*fk);
            }
            _ => self.unscorable += 1,
        }
        if let Some(prefixes) = &record.pos_prefixes {
            self.patterns.add_prefixes(prefixes);
        }
    }

    pub fn merge(&mut self, other: &PartialSummary) {
        for (name, acc) in &other.projects {
            self.projects.entry(name.clone()).or_default().merge(acc);
        }
        self.parse_errors += other.parse_errors;
        self.unknown_overloads += other.unknown_overloads;
        add_counts(&mut self.kinds_all, &other.kinds_all);
        add_counts(&mut self.kinds_with_message, &other.kinds_with_message);
        for (k, n) in &other.categories {
            *self.categories.entry(*k).or_default() += n;
        }
        for (k, n) in &other.sub_categories {
            *self.sub_categories.entry(*k).or_default() += n;
        }
        self.unclassifiable += other.unclassifiable;
        self.unscorable += other.unscorable;
        for (k, v) in &other.reading_ease {
            self.reading_ease.entry(*k).or_default().extend(v);
        }
        for (k, v) in &other.grade {
            self.grade.entry(*k).or_default().extend(v);
        }
        for (k, c) in &other.unigrams {
            add_counts(self.unigrams.entry(k.clone()).or_default(), c);
        }
        for (k, c) in &other.bigrams {
            add_counts(self.bigrams.entry(k.clone()).or_default(), c);
        }
        self.patterns.merge(&other.patterns);
        for (k, n) in &other.findings {
            *self.findings.entry(*k).or_default() += n;
        }
    }

    pub fn finish(&self, options: &ReportOptions) -> CorpusReport {
        let projects: Vec<ProjectSummary> = self
            .projects
            .iter()
            .map(|(name, p)| ProjectSummary {
                name: name.clone(),
                files: p.files,
                test_files: p.test_files,
                test_classes: p.test_classes,
                methods_with_asserts: p.methods_with_asserts.len() as u64,
                methods_with_messages: p.methods_with_messages.len() as u64,
                asserts_with_message: p.with_message,
                asserts_without_message: p.without_message,
            })
            .collect();

        let with: Vec<f64> = projects
            .iter()
            .filter(|p| p.asserts_with_message > 0)
            .map(|p| p.asserts_with_message as f64)
            .collect();
        let without: Vec<f64> = projects.iter().map(|p| p.asserts_without_message as f64).collect();
        let project_distribution = vec![
            DistributionRow { label: "Assertion methods with an explanation message".into(), summary: Summary::of(&with) },
            DistributionRow { label: "Assertion methods without an explanation message".into(), summary: Summary::of(&without) },
        ];

        let with_message: u64 = projects.iter().map(|p| p.asserts_with_message).sum();
        let without_message: u64 = projects.iter().map(|p| p.asserts_without_message).sum();
        let totals = Totals {
            projects: projects.len() as u64,
            files_scanned: projects.iter().map(|p| p.files).sum(),
            test_files: projects.iter().map(|p| p.test_files).sum(),
            test_classes: projects.iter().map(|p| p.test_classes).sum(),
            parse_errors: self.parse_errors,
            assertions: with_message + without_message,
            with_message,
            without_message,
            unknown_overloads: self.unknown_overloads,
            unclassifiable: self.unclassifiable,
            unscorable: self.unscorable,
        };

        let category_counts: Vec<(String, u64)> = TopCategory::ALL
            .iter()
            .filter_map(|c| self.categories.get(c).map(|n| (c.label().to_string(), *n)))
            .collect();
        let sub_categories = TopCategory::ALL
            .iter()
            .flat_map(|top| {
                let within: u64 = self.categories.get(top).copied().unwrap_or(0);
                self.sub_categories
                    .iter()
                    .filter(move |((t, _), _)| t == top)
                    .map(move |((t, s), n)| SubCategoryRow {
                        category: t.label().into(),
                        sub_category: s.label().into(),
                        count: *n,
                        percent: percent(*n, within),
                    })
            })
            .collect();

        let mut readability = Vec::new();
        for top in TopCategory::ALL {
            for (metric, source) in [("flesch_reading_ease", &self.reading_ease), ("fk_grade", &self.grade)] {
                let Some(values) = source.get(&top) else { continue };
                let mut scores = values.clone();
                scores.sort_by(f64::total_cmp);
                readability.push(ReadabilityRow {
                    category: top.label().into(),
                    metric: metric.into(),
                    summary: Summary::of(&scores),
                    scores,
                });
            }
        }

        let mut ngrams = Vec::new();
        for (n, source) in [(1, &self.unigrams), (2, &self.bigrams)] {
            for (kind, counts) in source {
                let mut rows: Vec<NgramRow> = counts
                    .iter()
                    .map(|(term, count)| NgramRow { term: term.clone(), count: *count })
                    .collect();
                rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.term.cmp(&b.term)));
                rows.truncate(options.ngram_top);
                ngrams.push(NgramTable { assert_kind: kind.clone(), n, rows });
            }
        }

        let findings = RuleId::ALL
            .iter()
            .map(|r| RuleCount {
                rule_id: *r,
                severity: r.severity(),
                count: self.findings.get(r).copied().unwrap_or(0),
            })
            .collect();

        CorpusReport {
            schema: SCHEMA.into(),
            totals,
            projects,
            project_distribution,
            assert_kinds: count_rows(self.kinds_with_message.iter().map(|(k, n)| (k.clone(), *n))),
            assert_kinds_all: count_rows(self.kinds_all.iter().map(|(k, n)| (k.clone(), *n))),
            categories: count_rows(category_counts),
            sub_categories,
            readability,
            ngrams,
            pos_patterns: self.patterns.tables(options.top_k),
            findings,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    /// Patterns shown per prefix length before the `Others` row.
    pub top_k: usize,
    pub ngram_top: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { top_k: 2, ngram_top: 10 }
    }
}

pub fn summarize(records: &[AssertionRecord], options: &ReportOptions) -> CorpusReport {
    let mut partial = PartialSummary::new();
    for r in records {
        partial.add(r);
    }
    partial.finish(options)
}

pub fn percent(count: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 * 100.0 / total as f64
    }
}

/// Rows sorted by count, descending, with their share of the total.
pub fn count_rows(counts: impl IntoIterator<Item = (String, u64)>) -> Vec<CountRow> {
    let mut rows: Vec<(String, u64)> = counts.into_iter().collect();
    let total: u64 = rows.iter().map(|(_, n)| n).sum();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    rows.into_iter()
        .map(|(name, count)| CountRow { name, count, percent: percent(count, total) })
        .collect()
}

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be ascending and non-empty.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Most frequent value after rounding to two decimals; ties go to the smallest.
pub fn mode(values: &[f64]) -> f64 {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for v in values {
        *counts.entry((round_score(*v) * 100.0).round() as i64).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let key = counts.iter().find(|(_, n)| **n == best).map(|(k, _)| *k).unwrap_or(0);
    key as f64 / 100.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: u64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
    pub mode: f64,
}

impl Summary {
    /// `None` for an empty sample. Input need not be sorted.
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Summary {
            n: v.len() as u64,
            min: v[0],
            q1: quantile(&v, 0.25),
            median: median(&v),
            mean: v.iter().sum::<f64>() / v.len() as f64,
            q3: quantile(&v, 0.75),
            max: v[v.len() - 1],
            mode: mode(&v),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub projects: u64,
    pub files_scanned: u64,
    pub test_files: u64,
    pub test_classes: u64,
    pub parse_errors: u64,
    pub assertions: u64,
    pub with_message: u64,
    pub without_message: u64,
    pub unknown_overloads: u64,
    pub unclassifiable: u64,
    pub unscorable: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectSummary {
    pub name: String,
    pub files: u64,
    pub test_files: u64,
    pub test_classes: u64,
    pub methods_with_asserts: u64,
    pub methods_with_messages: u64,
    pub asserts_with_message: u64,
    pub asserts_without_message: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub label: String,
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub name: String,
    pub count: u64,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubCategoryRow {
    pub category: String,
    pub sub_category: String,
    pub count: u64,
    /// Share within the parent category.
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityRow {
    pub category: String,
    pub metric: String,
    pub summary: Option<Summary>,
    /// Every score, ascending.
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgramRow {
    pub term: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgramTable {
    pub assert_kind: String,
    pub n: usize,
    pub rows: Vec<NgramRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule_id: RuleId,
    pub severity: Severity,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema: String,
    pub totals: Totals,
    pub projects: Vec<ProjectSummary>,
    pub project_distribution: Vec<DistributionRow>,
    /// Assertion methods carrying a message.
    pub assert_kinds: Vec<CountRow>,
    pub assert_kinds_all: Vec<CountRow>,
    pub categories: Vec<CountRow>,
    pub sub_categories: Vec<SubCategoryRow>,
    pub readability: Vec<ReadabilityRow>,
    pub ngrams: Vec<NgramTable>,
    pub pos_patterns: Vec<PatternTable>,
    pub findings: Vec<RuleCount>,
}

impl Default for CorpusReport {
    fn default() -> Self {
        PartialSummary::new().finish(&ReportOptions::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format `{s}`; expected json, csv or table")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("csv output needs a directory; pass --out DIR")]
    CsvNeedsDirectory,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ReportError + '_ {
    move |source| ReportError::Io { path: path.to_path_buf(), source }
}

pub fn to_json(report: &CorpusReport) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<CorpusReport, ReportError> {
    Ok(serde_json::from_str(text)?)
}

fn pct2(x: f64) -> String {
    format!("{x:.2}")
}

fn num2(x: f64) -> String {
    format!("{:.2}", round_score(x))
}

fn tags_label(tags: &[PosTag]) -> String {
    if tags.is_empty() {
        "Others".into()
    } else {
        tags.iter().map(|t| t.label()).collect::<Vec<_>>().join(", ")
    }
}

/// The CSV sections as `(file name, rows)`; the first row is the header.
pub fn csv_sections(report: &CorpusReport) -> Vec<(&'static str, Vec<Vec<String>>)> {
    let t = &report.totals;
    let totals = vec![
        vec!["metric".into(), "value".into()],
        vec!["projects".into(), t.projects.to_string()],
        vec!["files_scanned".into(), t.files_scanned.to_string()],
        vec!["test_files".into(), t.test_files.to_string()],
        vec!["test_classes".into(), t.test_classes.to_string()],
        vec!["parse_errors".into(), t.parse_errors.to_string()],
        vec!["assertions".into(), t.assertions.to_string()],
        vec!["with_message".into(), t.with_message.to_string()],
        vec!["without_message".into(), t.without_message.to_string()],
        vec!["unknown_overloads".into(), t.unknown_overloads.to_string()],
        vec!["unclassifiable".into(), t.unclassifiable.to_string()],
        vec!["unscorable".into(), t.unscorable.to_string()],
    ];
    let mut projects = vec![[
        "project", "files", "test_files", "test_classes", "methods_with_asserts",
        "methods_with_messages", "asserts_with_message", "asserts_without_message",
    ]
    .map(String::from)
    .to_vec()];
    for p in &report.projects {
        projects.push(vec![
            p.name.clone(),
            p.files.to_string(),
            p.test_files.to_string(),
            p.test_classes.to_string(),
            p.methods_with_asserts.to_string(),
            p.methods_with_messages.to_string(),
            p.asserts_with_message.to_string(),
            p.asserts_without_message.to_string(),
        ]);
    }
    let summary_header = |first: &str| {
        let mut h = vec![first.to_string()];
        h.extend(["n", "min", "q1", "median", "mean", "q3", "max", "mode"].map(String::from));
        h
    };
    let summary_cells = |s: &Option<Summary>| match s {
        None => vec!["0".to_string()].into_iter().chain(std::iter::repeat_n(String::new(), 7)).collect::<Vec<_>>(),
        Some(s) => vec![
            s.n.to_string(),
            num2(s.min),
            num2(s.q1),
            num2(s.median),
            num2(s.mean),
            num2(s.q3),
            num2(s.max),
            num2(s.mode),
        ],
    };
    let mut distribution = vec![summary_header("row")];
    for r in &report.project_distribution {
        let mut row = vec![r.label.clone()];
        row.extend(summary_cells(&r.summary));
        distribution.push(row);
    }
    let count_table = |header: &str, rows: &[CountRow]| {
        let mut out = vec![vec![header.to_string(), "count".into(), "percent".into()]];
        out.extend(rows.iter().map(|r| vec![r.name.clone(), r.count.to_string(), pct2(r.percent)]));
        out
    };
    let mut subs = vec![["category", "sub_category", "count", "percent"].map(String::from).to_vec()];
    subs.extend(report.sub_categories.iter().map(|r| {
        vec![r.category.clone(), r.sub_category.clone(), r.count.to_string(), pct2(r.percent)]
    }));
    let mut readability = vec![{
        let mut h = vec!["category".to_string()];
        h.extend(summary_header("metric"));
        h
    }];
    for r in &report.readability {
        let mut row = vec![r.category.clone(), r.metric.clone()];
        row.extend(summary_cells(&r.summary));
        readability.push(row);
    }
    let mut ngrams = vec![["assert_kind", "n", "term", "count"].map(String::from).to_vec()];
    for t in &report.ngrams {
        for r in &t.rows {
            ngrams.push(vec![t.assert_kind.clone(), t.n.to_string(), r.term.clone(), r.count.to_string()]);
        }
    }
    let mut patterns = vec![["prefix_len", "pattern", "count", "percent"].map(String::from).to_vec()];
    for t in &report.pos_patterns {
        for r in t.top.iter().chain(&t.others) {
            patterns.push(vec![t.prefix_len.to_string(), tags_label(&r.tags), r.count.to_string(), pct2(r.percent)]);
        }
    }
    let mut findings = vec![["rule_id", "severity", "count"].map(String::from).to_vec()];
    findings.extend(
        report
            .findings
            .iter()
            .map(|f| vec![f.rule_id.to_string(), f.severity.to_string(), f.count.to_string()]),
    );
    vec![
        ("totals.csv", totals),
        ("projects.csv", projects),
        ("project_distribution.csv", distribution),
        ("assert_kinds.csv", count_table("assert_kind", &report.assert_kinds)),
        ("assert_kinds_all.csv", count_table("assert_kind", &report.assert_kinds_all)),
        ("categories.csv", count_table("category", &report.categories)),
        ("sub_categories.csv", subs),
        ("readability.csv", readability),
        ("ngrams.csv", ngrams),
        ("pos_patterns.csv", patterns),
        ("findings.csv", findings),
    ]
}

/// Writes one CSV file per section into `dir`, creating it if needed.
pub fn write_csv_dir(report: &CorpusReport, dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    for (name, rows) in csv_sections(report) {
        let path = dir.join(name);
        let file = fs::File::create(&path).map_err(io_err(&path))?;
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(file);
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush().map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

fn render_table(out: &mut String, title: &str, rows: &[Vec<String>]) {
    let _ = writeln!(out, "{title}");
    if rows.len() <= 1 {
        let _ = writeln!(out, "  (no rows)\n");
        return;
    }
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let numeric_col: Vec<bool> = (0..cols)
        .map(|c| {
            rows[1..]
                .iter()
                .filter_map(|r| r.get(c))
                .all(|s| s.is_empty() || s.parse::<f64>().is_ok())
        })
        .collect();
    for (i, row) in rows.iter().enumerate() {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            let numeric = i > 0 && numeric_col[c];
            line.push(' ');
            if numeric {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            }
            line.push(' ');
        }
        let _ = writeln!(out, "{}", line.trim_end());
        if i == 0 {
            let rule: usize = widths.iter().map(|w| w + 2).sum();
            let _ = writeln!(out, "  {}", "-".repeat(rule.saturating_sub(2)));
        }
    }
    out.push('\n');
}

/// Terminal rendering of the report tables.
pub fn to_table(report: &CorpusReport) -> String {
    let mut out = String::new();
    let t = &report.totals;
    let _ = writeln!(
        out,
        "{} project(s), {} file(s) scanned, {} test file(s), {} assertion(s), {} with a message ({:.2}%)\n",
        t.projects,
        t.files_scanned,
        t.test_files,
        t.assertions,
        t.with_message,
        percent(t.with_message, t.assertions)
    );
    let sections = csv_sections(report);
    let titles = [
        ("project_distribution.csv", "Assertions per project"),
        ("assert_kinds.csv", "Assertion methods with a message"),
        ("categories.csv", "Message categories"),
        ("sub_categories.csv", "Message sub-categories"),
        ("readability.csv", "Readability by category"),
        ("pos_patterns.csv", "Leading part-of-speech patterns of text messages"),
        ("ngrams.csv", "Frequent terms by assertion method"),
        ("findings.csv", "Anti-pattern findings"),
    ];
    for (file, title) in titles {
        if let Some((_, rows)) = sections.iter().find(|(name, _)| *name == file) {
            render_table(&mut out, title, rows);
        }
    }
    out
}
