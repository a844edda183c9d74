//! Per-file analysis and corpus reduction.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::antipattern::{self, Finding, RuleConfig, SiteAnalysis};
use crate::category::{self, TopCategory};
use crate::discover::SourceInput;
use crate::junit::{self, AssertionSite, AssertionTable, ExtractOptions};
use crate::parser::parse_file;
use crate::pos::{self, Lexicon};
use crate::readability;
use crate::report::{AssertionRecord, CorpusReport, FileFacts, PartialSummary, ReportOptions};
use crate::source::{Position, SourceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    Io,
    ParseError,
    UnknownOverload,
    Unclassifiable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub file: String,
    pub location: Option<Position>,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.location {
            Some(p) => write!(f, "{}:{}: {}", self.file, p, self.message),
            None => write!(f, "{}: {}", self.file, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileAnalysis {
    pub file: String,
    pub facts: FileFacts,
    pub records: Vec<AssertionRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

impl FileAnalysis {
    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.records.iter().flat_map(|r| r.findings.iter())
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzerConfig {
    pub extract: ExtractOptions,
    pub rules: RuleConfig,
    /// Also analyze assertions outside test methods.
    pub include_helpers: bool,
    pub report: ReportOptions,
}

pub struct Analyzer {
    table: AssertionTable,
    lexicon: Cow<'static, Lexicon>,
    config: AnalyzerConfig,
}

impl Analyzer {
    pub fn new(config: AnalyzerConfig) -> Self {
        Analyzer {
            table: AssertionTable::default(),
            lexicon: Cow::Borrowed(Lexicon::bundled()),
            config,
        }
    }

    pub fn with_table(mut self, table: AssertionTable) -> Self {
        self.table = table;
        self
    }

    pub fn with_lexicon(mut self, lexicon: Lexicon) -> Self {
        self.lexicon = Cow::Owned(lexicon);
        self
    }

    pub fn config(&self) -> &AnalyzerConfig {
        &self.config
    }

    pub fn analyze_source(&self, project: &str, source: &SourceFile) -> FileAnalysis {
        let file = source.path().display().to_string();
        let parsed = parse_file(source);
        let mut diagnostics: Vec<Diagnostic> = parsed
            .errors
            .iter()
            .map(|e| Diagnostic {
                file: file.clone(),
                location: Some(e.position),
                kind: DiagnosticKind::ParseError,
                message: e.message.clone(),
            })
            .collect();
        let mut facts = FileFacts {
            project: project.to_string(),
            parse_errors: parsed.errors.len() as u64,
            ..FileFacts::default()
        };
        let mut records = Vec::new();
        for class in &parsed.classes {
            if !junit::classify_test_file(class).is_test_file {
                continue;
            }
            facts.is_test_file = true;
            facts.test_classes += 1;
            for site in junit::find_assertions(class, &self.table, &self.config.extract) {
                if !site.in_test_method && !self.config.include_helpers {
                    continue;
                }
                if site.unknown_overload {
                    facts.unknown_overloads += 1;
                    diagnostics.push(Diagnostic {
                        file: file.clone(),
                        location: Some(site.location),
                        kind: DiagnosticKind::UnknownOverload,
                        message: format!("{} with {} arguments is not a known overload", site.assert_kind, site.args.len()),
                    });
                }
                let record = self.record(project, &file, &site);
                if let Some(reason) = &record.unclassifiable {
                    diagnostics.push(Diagnostic {
                        file: file.clone(),
                        location: Some(site.location),
                        kind: DiagnosticKind::Unclassifiable,
                        message: format!("message {} is unclassifiable: {reason}", record.message_source.as_deref().unwrap_or("")),
                    });
                }
                records.push(record);
            }
        }
        records.sort_by_key(|r| r.location);
        FileAnalysis { file, facts, records, diagnostics }
    }

    fn record(&self, project: &str, file: &str, site: &AssertionSite) -> AssertionRecord {
        let message = site.message.as_ref();
        let rendered = message.map(readability::render);
        let categorized = message.map(category::categorize);
        let category = categorized.as_ref().and_then(|c| c.as_ref().ok()).copied();
        let unclassifiable = categorized.and_then(|c| c.err()).map(|e| e.reason);
        let metrics = rendered.as_ref().map(readability::score);
        let pos_tags = match (&category, &rendered) {
            (Some(c), Some(r)) if c.top == TopCategory::Text => {
                let words = readability::segment(&r.text).words;
                Some(pos::tag_sentence(&words, &self.lexicon).into_iter().map(|(_, t)| t).collect::<Vec<_>>())
            }
            _ => None,
        };
        let pos_prefixes = pos_tags.as_deref().map(pos::prefixes);
        let findings = antipattern::detect(
            &SiteAnalysis {
                file,
                site,
                category: category.as_ref(),
                rendered: rendered.as_ref(),
                metrics: metrics.as_ref(),
            },
            &self.config.rules,
            &self.lexicon,
        );
        AssertionRecord {
            project: project.to_string(),
            file: file.to_string(),
            location: site.location,
            assert_kind: site.assert_kind.clone(),
            enclosing_class: site.enclosing_class.clone(),
            enclosing_method: site.enclosing_method.clone(),
            enclosing_method_location: site.enclosing_method_location,
            in_test_method: site.in_test_method,
            has_message: message.is_some(),
            message_source: message.map(|m| m.raw_source.clone()),
            rendered: rendered.map(|r| r.text),
            category,
            unclassifiable,
            metrics,
            pos_tags,
            pos_prefixes,
            findings,
        }
    }

    /// Reads and analyzes one file; read failures become diagnostics.
    pub fn analyze_input(&self, input: &SourceInput) -> FileAnalysis {
        match SourceFile::read(&input.path) {
            Ok(source) => self.analyze_source(&input.project, &source),
            Err(e) => {
                let file = input.path.display().to_string();
                FileAnalysis {
                    diagnostics: vec![Diagnostic {
                        file: file.clone(),
                        location: None,
                        kind: DiagnosticKind::Io,
                        message: format!("cannot read: {e}"),
                    }],
                    file,
                    facts: FileFacts { project: input.project.clone(), ..FileFacts::default() },
                    records: Vec::new(),
                }
            }
        }
    }

    pub fn analyze_sequential(&self, inputs: &[SourceInput]) -> Vec<FileAnalysis> {
        inputs.iter().map(|i| self.analyze_input(i)).collect()
    }

    /// Analyzes files on a thread pool; `jobs` of `None` uses every core.
    /// Output order always follows `inputs`.
    #[cfg(feature = "parallel")]
    pub fn analyze_parallel(&self, inputs: &[SourceInput], jobs: Option<usize>) -> Vec<FileAnalysis> {
        use rayon::prelude::*;
        let run = || inputs.par_iter().map(|i| self.analyze_input(i)).collect();
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }

    /// `jobs == Some(1)`, or a build without the `parallel` feature, runs in
    /// the calling thread.
    pub fn analyze_files(&self, inputs: &[SourceInput], jobs: Option<usize>) -> Vec<FileAnalysis> {
        #[cfg(feature = "parallel")]
        if jobs != Some(1) {
            return self.analyze_parallel(inputs, jobs);
        }
        let _ = jobs;
        self.analyze_sequential(inputs)
    }

    pub fn summarize(&self, analyses: &[FileAnalysis]) -> CorpusReport {
        reduce(analyses).finish(&self.config.report)
    }
}

pub fn partial_of(analysis: &FileAnalysis) -> PartialSummary {
    let mut p = PartialSummary::new();
    p.add_file(&analysis.facts);
    for r in &analysis.records {
        p.add(r);
    }
    p
}

/// Folds per-file summaries into one, in input order.
pub fn reduce(analyses: &[FileAnalysis]) -> PartialSummary {
    analyses.iter().map(partial_of).fold(PartialSummary::new(), |mut acc, p| {
        acc.merge(&p);
        acc
    })
}
