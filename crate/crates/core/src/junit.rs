//! JUnit 4 test detection, assertion discovery and message resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{extract_concat_tree, CallExpr, ClassDecl, Expr};
use crate::source::Position;

pub const DEFAULT_TABLE: &str = include_str!("../data/junit4_assertions.txt");
pub const DEFAULT_TOLERANCE_PATTERN: &str = "(?i)(eps|epsilon|delta|tol|tolerance).*";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestEvidence {
    Junit4Import,
    TestAnnotation,
    RunWithAnnotation,
    ExtendsTestCase,
}

impl fmt::Display for TestEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestEvidence::Junit4Import => "junit4-import",
            TestEvidence::TestAnnotation => "@Test",
            TestEvidence::RunWithAnnotation => "@RunWith",
            TestEvidence::ExtendsTestCase => "extends-TestCase",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestClassification {
    pub is_test_file: bool,
    pub evidence: Vec<TestEvidence>,
}

pub fn classify_test_file(class: &ClassDecl) -> TestClassification {
    let mut evidence = Vec::new();
    if class.imports.iter().any(|i| is_junit4_import(i)) {
        evidence.push(TestEvidence::Junit4Import);
    }
    if class.methods.iter().any(|m| m.has_annotation("Test")) {
        evidence.push(TestEvidence::TestAnnotation);
    }
    if class.has_annotation("RunWith") {
        evidence.push(TestEvidence::RunWithAnnotation);
    }
    if class
        .superclass
        .as_deref()
        .is_some_and(|s| s == "TestCase" || s.ends_with(".TestCase"))
    {
        evidence.push(TestEvidence::ExtendsTestCase);
    }
    TestClassification {
        is_test_file: !evidence.is_empty(),
        evidence,
    }
}

fn is_junit4_import(path: &str) -> bool {
    path == "org.junit" || path.starts_with("org.junit.") && !path.starts_with("org.junit.jupiter")
}

/// Where the message sits for one arity of an assertion method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MessageRule {
    None,
    At(usize),
    /// Message at the index unless the numeric delta overload applies.
    AtUnlessDelta(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Assertion methods and their overload rules, keyed by method name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionTable {
    methods: BTreeMap<String, BTreeMap<usize, MessageRule>>,
}

impl Default for AssertionTable {
    fn default() -> Self {
        DEFAULT_TABLE.parse().expect("bundled assertion table parses")
    }
}

impl FromStr for AssertionTable {
    type Err = TableError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut methods = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TableError::Syntax { line: line_no, message };
            let mut fields = line.split_whitespace();
            let name = fields.next().expect("non-empty line has a field");
            let mut rules = BTreeMap::new();
            for field in fields {
                let (arity, pos) = field
                    .split_once(':')
                    .ok_or_else(|| err(format!("expected `arity:position`, got `{field}`")))?;
                let arity: usize = arity
                    .parse()
                    .map_err(|_| err(format!("bad arity `{arity}`")))?;
                let rule = if pos == "-" {
                    MessageRule::None
                } else if let Some(n) = pos.strip_suffix('?') {
                    MessageRule::AtUnlessDelta(n.parse().map_err(|_| err(format!("bad position `{pos}`")))?)
                } else {
                    MessageRule::At(pos.parse().map_err(|_| err(format!("bad position `{pos}`")))?)
                };
                if let MessageRule::At(n) | MessageRule::AtUnlessDelta(n) = rule {
                    if n >= arity {
                        return Err(err(format!("position {n} out of range for arity {arity}")));
                    }
                }
                rules.insert(arity, rule);
            }
            if rules.is_empty() {
                return Err(err(format!("`{name}` has no arity rules")));
            }
            methods.insert(name.to_string(), rules);
        }
        Ok(AssertionTable { methods })
    }
}

impl AssertionTable {
    pub fn contains(&self, name: &str) -> bool {
        self.methods.contains_key(name)
    }

    pub fn rule(&self, name: &str, arity: usize) -> Option<MessageRule> {
        self.methods.get(name)?.get(&arity).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.methods.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    /// Demand an `org.junit` import before accepting unqualified or
    /// `Assert.`-qualified calls.
    pub require_junit_import: bool,
    pub tolerance_name: Regex,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            require_junit_import: false,
            tolerance_name: Regex::new(DEFAULT_TOLERANCE_PATTERN).expect("default pattern is valid"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageExpr {
    pub parts: Vec<Expr>,
    pub raw_source: String,
}

impl MessageExpr {
    pub fn from_expr(expr: &Expr) -> Self {
        MessageExpr {
            parts: extract_concat_tree(expr),
            raw_source: expr.source_text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ResolveError {
    #[error("no `{name}` overload takes {arity} arguments")]
    UnknownOverload { name: String, arity: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssertionSite {
    pub assert_kind: String,
    pub callee: String,
    pub args: Vec<Expr>,
    pub message: Option<MessageExpr>,
    pub location: Position,
    pub enclosing_method: String,
    pub enclosing_method_location: Position,
    pub enclosing_class: String,
    pub in_test_method: bool,
    /// Set when the arity matched no known overload.
    pub unknown_overload: bool,
}

/// Collects the assertion calls of a test class and resolves their messages.
pub fn find_assertions(
    class: &ClassDecl,
    table: &AssertionTable,
    options: &ExtractOptions,
) -> Vec<AssertionSite> {
    let has_import = class.imports.iter().any(|i| is_junit4_import(i));
    let legacy = classify_test_file(class)
        .evidence
        .contains(&TestEvidence::ExtendsTestCase);
    let mut sites = Vec::new();
    for method in &class.methods {
        let in_test_method =
            method.has_annotation("Test") || legacy && method.name.starts_with("test");
        for call in &method.body_calls {
            if !is_junit_assert(call, table, has_import, options) {
                continue;
            }
            let mut site = AssertionSite {
                assert_kind: call.name.clone(),
                callee: call.callee(),
                args: call.args.clone(),
                message: None,
                location: call.location,
                enclosing_method: method.name.clone(),
                enclosing_method_location: method.location,
                enclosing_class: class.name.clone(),
                in_test_method,
                unknown_overload: false,
            };
            match resolve_message(&site, table, options) {
                Ok(message) => site.message = message,
                Err(ResolveError::UnknownOverload { .. }) => site.unknown_overload = true,
            }
            sites.push(site);
        }
    }
    sites
}

fn is_junit_assert(
    call: &CallExpr,
    table: &AssertionTable,
    has_import: bool,
    options: &ExtractOptions,
) -> bool {
    if !table.contains(&call.name) {
        return false;
    }
    match call.qualifier().as_deref() {
        Some([]) | Some(["Assert"]) => !options.require_junit_import || has_import,
        Some(["org", "junit", "Assert"]) => true,
        _ => false,
    }
}

/// Applies the overload rules to pick the message argument.
pub fn resolve_message(
    site: &AssertionSite,
    table: &AssertionTable,
    options: &ExtractOptions,
) -> Result<Option<MessageExpr>, ResolveError> {
    let arity = site.args.len();
    let rule = table
        .rule(&site.assert_kind, arity)
        .ok_or_else(|| ResolveError::UnknownOverload {
            name: site.assert_kind.clone(),
            arity,
        })?;
    let index = match rule {
        MessageRule::None => return Ok(None),
        MessageRule::At(i) => i,
        MessageRule::AtUnlessDelta(i) => {
            if is_delta_overload(&site.args, &options.tolerance_name) {
                return Ok(None);
            }
            i
        }
    };
    Ok(site.args.get(index).map(MessageExpr::from_expr))
}

/// Whether a three-argument call looks like `(expected, actual, delta)`.
///
/// A string-bearing first argument is always a message. Otherwise the call
/// is the delta overload when the first argument is a numeric literal, when
/// both trailing arguments are numeric literals, or when the second is not a
/// numeric literal and the third is a numeric literal or a tolerance-named
/// identifier. `assertEquals(r.getLowerBound(), 1.0, EPSILON)` is therefore
/// read as message-first.
fn is_delta_overload(args: &[Expr], tolerance: &Regex) -> bool {
    let [first, second, third] = args else { return false };
    if extract_concat_tree(first)
        .iter()
        .any(|p| matches!(p, Expr::StringLiteral(_) | Expr::CharLiteral(_)))
    {
        return false;
    }
    if first.is_numeric_literal() {
        return true;
    }
    if second.is_numeric_literal() && third.is_numeric_literal() {
        return true;
    }
    let tolerance_like = match third {
        Expr::NumericLiteral(_) => true,
        Expr::Identifier(n) => tolerance.is_match(n),
        Expr::FieldAccess(chain) => chain.last().is_some_and(|n| tolerance.is_match(n)),
        _ => false,
    };
    !second.is_numeric_literal() && tolerance_like
}
