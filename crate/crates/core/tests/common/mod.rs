#![allow(dead_code)]

use std::path::PathBuf;

use assertlint_core::antipattern::{Finding, RuleId};
use assertlint_core::ast::{CallExpr, Expr};
use assertlint_core::category::{categorize_parts, MessageCategory, TopCategory};
use assertlint_core::discover::{discover, DiscoverOptions};
use assertlint_core::pipeline::{Analyzer, AnalyzerConfig, FileAnalysis};
use assertlint_core::pos::{prefixes, PatternCounts, PosTag};
use assertlint_core::readability::score_text;
use assertlint_core::report::{count_rows, summarize, AssertionRecord, PartialSummary, ReportOptions};
use assertlint_core::source::{Position, SourceFile};
use assertlint_core::splitter::split;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn analyze_dir(dir: &str) -> Vec<FileAnalysis> {
    let inputs = discover(&[fixtures().join(dir)], &DiscoverOptions::default()).unwrap();
    Analyzer::new(AnalyzerConfig::default()).analyze_files(&inputs, Some(1))
}

pub fn rule_ids(findings: &[Finding]) -> Vec<RuleId> {
    findings.iter().map(|f| f.rule_id).collect()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

type Outcome = Result<(), String>;

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Outcome {
    r.map_err(|e| e.to_string())
}

/// Concatenated terms give back the identifier minus separators, and every
/// term splits to itself.
pub fn splitter_lossless_idempotent(cases: u32) -> Outcome {
    finish(runner(cases).run(&"[A-Za-z_$][A-Za-z0-9_$]{0,24}", |name| {
        let terms = split(&name).terms;
        let stripped: String = name.chars().filter(|c| *c != '_' && *c != '$').collect();
        prop_assert_eq!(terms.concat(), stripped);
        for t in &terms {
            prop_assert!(!t.is_empty());
            prop_assert_eq!(&split(t).terms, &vec![t.clone()]);
        }
        Ok(())
    }))
}

fn part_strategy() -> impl Strategy<Value = Expr> {
    prop_oneof![
        "[a-z ]{0,8}".prop_map(Expr::StringLiteral),
        "[a-z][A-Za-z]{0,6}".prop_map(Expr::Identifier),
        ("[a-z]{1,4}", "[a-z]{1,4}").prop_map(|(a, b)| Expr::FieldAccess(vec![a, b])),
        "[a-z][A-Za-z]{0,6}".prop_map(|name| Expr::MethodCall(Box::new(CallExpr {
            receiver: None,
            raw: format!("{name}()"),
            name,
            args: vec![],
            location: Position::default(),
        }))),
        "[0-9]{1,3}".prop_map(Expr::NumericLiteral),
    ]
}

/// At most one of the three top-level predicates holds, and the categorizer
/// agrees with it; lists matching none are unclassifiable.
pub fn categorizer_partition(cases: u32) -> Outcome {
    finish(runner(cases).run(&prop::collection::vec(part_strategy(), 1..7), |parts| {
        let is_str = |p: &Expr| matches!(p, Expr::StringLiteral(_));
        let is_ident = |p: &Expr| matches!(p, Expr::Identifier(_) | Expr::FieldAccess(_) | Expr::MethodCall(_));
        let text = parts.iter().all(is_str);
        let ident = !parts.iter().any(is_str) && parts.iter().all(is_ident);
        let combo = parts.iter().any(is_str) && parts.iter().any(|p| !is_str(p));
        let holding = [text, ident, combo].iter().filter(|b| **b).count();
        prop_assert!(holding <= 1);
        match categorize_parts(&parts) {
            Ok(MessageCategory { top, sub, .. }) => {
                prop_assert_eq!(holding, 1);
                let expected = if text {
                    TopCategory::Text
                } else if ident {
                    TopCategory::Identifier
                } else {
                    TopCategory::Combination
                };
                prop_assert_eq!(top, expected);
                prop_assert_eq!(sub.is_none(), top == TopCategory::Text);
            }
            Err(_) => prop_assert_eq!(holding, 0),
        }
        Ok(())
    }))
}

const JAVA_TOKENS: &[&str] = &[
    "class", "T", "{", "}", "(", ")", "@Test", "void", "t", "assertEquals", "assertTrue", "fail",
    "\"msg\"", "\"", "'", "'c'", "+", "-", ".", ",", ";", "x", "1.0", "new", "<", ">", "[", "]",
    "->", "::", "/*", "*/", "//", "\n", "import", "org.junit.Test", "extends", "TestCase", "?",
    ":", "=", "\"\"\"", "\\", "\\u", "0x1F", "switch", "case", "return", "this", "super",
];

fn fuzz_input() -> impl Strategy<Value = String> {
    prop_oneof![
        any::<String>(),
        prop::collection::vec(prop::sample::select(JAVA_TOKENS), 0..80).prop_map(|t| t.join(" ")),
        prop::collection::vec(prop::sample::select(JAVA_TOKENS), 0..80).prop_map(|t| t.concat()),
        prop::collection::vec(any::<u8>(), 0..200).prop_map(|b| String::from_utf8_lossy(&b).into_owned()),
    ]
}

/// The whole per-file pipeline survives arbitrary input.
pub fn parser_fuzz(cases: u32) -> Outcome {
    let analyzer = Analyzer::new(AnalyzerConfig {
        include_helpers: true,
        ..AnalyzerConfig::default()
    });
    finish(runner(cases).run(&fuzz_input(), |src| {
        let prefixed = format!("import org.junit.Test; class T {{ @Test void t() {{ {src} }} }}");
        analyzer.analyze_source("p", &SourceFile::new("F.java", src));
        analyzer.analyze_source("p", &SourceFile::new("G.java", prefixed));
        Ok(())
    }))
}

const WORDS: &[&str] = &[
    "value", "should", "not", "be", "null", "Expected", "size", "works", "Serialization", "file",
    "exists", "Invalid", "number", "0", "map", "is", "different", "(1,2)",
];
const KINDS: &[&str] = &["assertEquals", "assertTrue", "assertFalse", "assertNotNull", "fail"];

pub fn record_strategy() -> impl Strategy<Value = AssertionRecord> {
    (
        prop::sample::select(&["alpha", "beta", "gamma"][..]),
        prop::sample::select(KINDS),
        0u32..6,
        prop::option::of((
            prop::collection::vec(prop::sample::select(WORDS), 1..6),
            prop::sample::select(&[TopCategory::Text, TopCategory::Identifier, TopCategory::Combination][..]),
        )),
        prop::collection::vec(prop::sample::select(&RuleId::ALL[..]), 0..3),
    )
        .prop_map(|(project, kind, method, message, rules)| {
            let (rendered, category, metrics, pos_prefixes) = match message {
                Some((words, top)) => {
                    let text = words.join(" ");
                    let tags: Vec<PosTag> = words
                        .iter()
                        .map(|w| if w.chars().next().unwrap().is_uppercase() { PosTag::ProperNoun } else { PosTag::NounSingular })
                        .collect();
                    (
                        Some(text.clone()),
                        Some(MessageCategory { top, sub: None, has_char_literal: false }),
                        Some(score_text(&text)),
                        (top == TopCategory::Text).then(|| prefixes(&tags)),
                    )
                }
                None => (None, None, None, None),
            };
            AssertionRecord {
                project: project.to_string(),
                file: format!("{project}/T.java"),
                location: Position { line: method + 1, column: 5 },
                assert_kind: kind.to_string(),
                enclosing_class: "T".into(),
                enclosing_method: format!("m{method}"),
                enclosing_method_location: Position { line: method + 1, column: 1 },
                in_test_method: true,
                has_message: rendered.is_some(),
                message_source: None,
                rendered,
                category,
                unclassifiable: None,
                metrics,
                pos_tags: None,
                pos_prefixes,
                findings: rules
                    .into_iter()
                    .map(|rule_id| Finding {
                        rule_id,
                        severity: rule_id.severity(),
                        file: format!("{project}/T.java"),
                        location: Position { line: 1, column: 1 },
                        message_excerpt: String::new(),
                        rationale: String::new(),
                    })
                    .collect(),
            }
        })
}

fn partial(records: &[AssertionRecord]) -> PartialSummary {
    let mut p = PartialSummary::new();
    for r in records {
        p.add(r);
    }
    p
}

/// Summarizing everything at once equals merging the summaries of any
/// three-way split, in either grouping.
pub fn merge_associativity(cases: u32) -> Outcome {
    let strategy = (prop::collection::vec(record_strategy(), 0..40), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    finish(runner(cases).run(&strategy, |(records, i, j)| {
        let options = ReportOptions::default();
        let whole = summarize(&records, &options);
        let (mut a, mut b) = (i.index(records.len() + 1), j.index(records.len() + 1));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (pa, pb, pc) = (partial(&records[..a]), partial(&records[a..b]), partial(&records[b..]));
        let mut left = pa.clone();
        left.merge(&pb);
        left.merge(&pc);
        let mut bc = pb.clone();
        bc.merge(&pc);
        let mut right = pa;
        right.merge(&bc);
        prop_assert_eq!(&left.finish(&options), &whole);
        prop_assert_eq!(&right.finish(&options), &whole);
        Ok(())
    }))
}

fn sums_to_100(percents: impl Iterator<Item = f64>) -> bool {
    let total: f64 = percents.map(|p| (p * 100.0).round() / 100.0).sum();
    (total - 100.0).abs() <= 0.05
}

/// Every non-empty percentage column sums to 100 within rounding.
pub fn percentage_sums(cases: u32) -> Outcome {
    let counts = prop::collection::vec(("[a-z]{1,6}", 1u64..5000), 1..12);
    let records = prop::collection::vec(record_strategy(), 1..60);
    finish(runner(cases).run(&(counts, records), |(counts, records)| {
        let rows = count_rows(counts);
        prop_assert!(sums_to_100(rows.iter().map(|r| r.percent)));
        let report = summarize(&records, &ReportOptions::default());
        for column in [&report.assert_kinds, &report.assert_kinds_all, &report.categories] {
            if !column.is_empty() {
                prop_assert!(sums_to_100(column.iter().map(|r| r.percent)));
            }
        }
        for table in &report.pos_patterns {
            if table.total > 0 {
                prop_assert!(sums_to_100(table.top.iter().chain(&table.others).map(|r| r.percent)));
            }
        }
        Ok(())
    }))
}

/// Prefix tables over random tag sequences, for any `k`.
pub fn pos_table_sums(cases: u32) -> Outcome {
    let seqs = prop::collection::vec(prop::collection::vec(prop::sample::select(&PosTag::ALL[..]), 1..6), 1..50);
    finish(runner(cases).run(&(seqs, 0usize..5), |(seqs, k)| {
        let mut counts = PatternCounts::default();
        for s in &seqs {
            counts.add_prefixes(&prefixes(s));
        }
        for table in counts.tables(k) {
            if table.total > 0 {
                prop_assert!(sums_to_100(table.top.iter().chain(&table.others).map(|r| r.percent)));
                let n: u64 = table.top.iter().chain(&table.others).map(|r| r.count).sum();
                prop_assert_eq!(n, table.total);
            }
        }
        Ok(())
    }))
}
