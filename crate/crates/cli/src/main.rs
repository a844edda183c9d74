mod cli;
mod config;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use assertlint_core::antipattern::{Finding, RuleConfig};
use assertlint_core::discover::{discover, DiscoverOptions};
use assertlint_core::junit::{AssertionTable, ExtractOptions};
use assertlint_core::pipeline::{Analyzer, AnalyzerConfig, DiagnosticKind, FileAnalysis};
use assertlint_core::pos::Lexicon;
use assertlint_core::report::{self, CorpusReport, Format, ReportOptions};
use clap::Parser;
use regex::Regex;

use cli::{Cli, Command};
use config::Config;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let config = config::build(cli.command.args())?;
    if cli.command.args().print_config {
        print!("{}", config.to_toml()?);
        return Ok(ExitCode::SUCCESS);
    }
    let analyzer = analyzer(&config)?;
    let inputs = discover(
        &config.roots,
        &DiscoverOptions {
            include: config.include.clone(),
            exclude: config.exclude.clone(),
            project_mode: config.projects,
        },
    )?;
    let analyses = analyzer.analyze_files(&inputs, config.jobs);
    report_diagnostics(&analyses);
    if !analyses.iter().any(|a| a.facts.is_test_file) {
        eprintln!("warning: no test files found");
    }
    match &cli.command {
        Command::Scan(_) => {
            let report = analyzer.summarize(&analyses);
            emit_report(&report, config.format.unwrap_or(Format::Json), config.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats(_) => {
            let report = analyzer.summarize(&analyses);
            if report.totals.with_message == 0 {
                eprintln!("note: no assertion in the scanned files has a message");
            }
            emit_report(&report, config.format.unwrap_or(Format::Table), config.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lint(_) => lint(&analyses, &config),
    }
}

fn analyzer(config: &Config) -> Result<Analyzer> {
    let mut rules = RuleConfig {
        min_words: config.rules.min_words,
        require_messages: config.lint.require_messages,
        ..RuleConfig::default()
    };
    rules.disabled.extend(config.disabled_rules()?);
    let tolerance_name = Regex::new(&config.rules.tolerance_name)
        .with_context(|| format!("invalid tolerance_name regex `{}`", config.rules.tolerance_name))?;
    let mut analyzer = Analyzer::new(AnalyzerConfig {
        extract: ExtractOptions {
            require_junit_import: config.junit.require_junit_import,
            tolerance_name,
        },
        rules,
        include_helpers: config.junit.include_helpers,
        report: ReportOptions { top_k: config.pos.top_k, ..ReportOptions::default() },
    });
    if let Some(path) = &config.junit.assertion_table {
        let text = read(path)?;
        let table: AssertionTable = text
            .parse()
            .with_context(|| format!("invalid assertion table {}", path.display()))?;
        analyzer = analyzer.with_table(table);
    }
    if let Some(path) = &config.pos.lexicon {
        let mut lexicon = Lexicon::bundled().clone();
        lexicon
            .merge_overrides(&read(path)?)
            .with_context(|| format!("invalid lexicon {}", path.display()))?;
        analyzer = analyzer.with_lexicon(lexicon);
    }
    Ok(analyzer)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn report_diagnostics(analyses: &[FileAnalysis]) {
    let stderr = io::stderr();
    let mut err = stderr.lock();
    for d in analyses.iter().flat_map(|a| &a.diagnostics) {
        let level = match d.kind {
            DiagnosticKind::Io | DiagnosticKind::ParseError => "warning",
            DiagnosticKind::UnknownOverload | DiagnosticKind::Unclassifiable => "note",
        };
        let _ = writeln!(err, "{level}: {d}");
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn emit_report(report: &CorpusReport, format: Format, out: Option<&Path>) -> Result<()> {
    match format {
        Format::Json => write_output(&report::to_json(report)?, out),
        Format::Table => write_output(&report::to_table(report), out),
        Format::Csv => {
            let Some(dir) = out else { bail!(report::ReportError::CsvNeedsDirectory) };
            report::write_csv_dir(report, dir)?;
            Ok(())
        }
    }
}

fn lint(analyses: &[FileAnalysis], config: &Config) -> Result<ExitCode> {
    let threshold = config.min_severity()?;
    let findings: Vec<&Finding> = analyses.iter().flat_map(|a| a.findings()).collect();
    let text = match config.format.unwrap_or(Format::Table) {
        Format::Table => findings.iter().map(|f| format!("{f}\n")).collect(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&findings)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["file", "line", "column", "rule_id", "severity", "message", "rationale"])?;
            for f in &findings {
                w.write_record([
                    f.file.clone(),
                    f.location.line.to_string(),
                    f.location.column.to_string(),
                    f.rule_id.to_string(),
                    f.severity.to_string(),
                    f.message_excerpt.clone(),
                    f.rationale.clone(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    write_output(&text, config.out.as_deref())?;
    let failing = findings.iter().any(|f| f.severity >= threshold);
    Ok(if failing { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
