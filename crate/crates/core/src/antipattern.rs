//! Lint rules over assertion messages.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{MessageCategory, TopCategory};
use crate::junit::{AssertionSite, MessageExpr};
use crate::pos::Lexicon;
use crate::readability::{self, RenderedMessage, TextMetrics};
use crate::source::Position;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "AP1-code-as-literal")]
    CodeAsLiteral,
    #[serde(rename = "AP2-misleading")]
    Misleading,
    #[serde(rename = "AP3-too-short")]
    TooShort,
    #[serde(rename = "AP4-digits-only")]
    DigitsOnly,
    #[serde(rename = "NO-MESSAGE")]
    NoMessage,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::CodeAsLiteral,
        RuleId::Misleading,
        RuleId::TooShort,
        RuleId::DigitsOnly,
        RuleId::NoMessage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::CodeAsLiteral => "AP1-code-as-literal",
            RuleId::Misleading => "AP2-misleading",
            RuleId::TooShort => "AP3-too-short",
            RuleId::DigitsOnly => "AP4-digits-only",
            RuleId::NoMessage => "NO-MESSAGE",
        }
    }

    pub fn short(self) -> &'static str {
        self.as_str().split('-').next().filter(|s| s.starts_with("AP")).unwrap_or("NO-MESSAGE")
    }

    pub fn severity(self) -> Severity {
        match self {
            RuleId::Misleading => Severity::Info,
            _ => Severity::Warning,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`; expected one of AP1, AP2, AP3, AP4, NO-MESSAGE")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    /// Accepts the full id or its `APn` prefix, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(wanted) || r.short().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
        })
    }
}

impl FromStr for Severity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "info" => Ok(Severity::Info),
            "warning" | "warn" => Ok(Severity::Warning),
            _ => Err(format!("unknown severity `{s}`; expected info or warning")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule_id: RuleId,
    pub severity: Severity,
    pub file: String,
    pub location: Position,
    pub message_excerpt: String,
    pub rationale: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{} {} {}", self.file, self.location, self.rule_id, self.rationale)?;
        if !self.message_excerpt.is_empty() {
            write!(f, ": {:?}", self.message_excerpt)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleConfig {
    pub disabled: BTreeSet<RuleId>,
    pub min_words: usize,
    pub require_messages: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            disabled: BTreeSet::new(),
            min_words: 2,
            require_messages: false,
        }
    }
}

impl RuleConfig {
    pub fn is_enabled(&self, rule: RuleId) -> bool {
        if self.disabled.contains(&rule) {
            return false;
        }
        rule != RuleId::NoMessage || self.require_messages
    }
}

/// Everything the rules look at for one assertion.
pub struct SiteAnalysis<'a> {
    pub file: &'a str,
    pub site: &'a AssertionSite,
    pub category: Option<&'a MessageCategory>,
    pub rendered: Option<&'a RenderedMessage>,
    pub metrics: Option<&'a TextMetrics>,
}

const EXCERPT_CHARS: usize = 60;

fn excerpt(text: &str) -> String {
    let mut out: String = text.chars().take(EXCERPT_CHARS).collect();
    if text.chars().count() > EXCERPT_CHARS {
        out.push_str("...");
    }
    out
}

pub fn detect(input: &SiteAnalysis<'_>, config: &RuleConfig, lexicon: &Lexicon) -> Vec<Finding> {
    let mut findings = Vec::new();
    let site = input.site;
    let mut emit = |rule: RuleId, text: &str, rationale: String| {
        if config.is_enabled(rule) {
            findings.push(Finding {
                rule_id: rule,
                severity: rule.severity(),
                file: input.file.to_string(),
                location: site.location,
                message_excerpt: excerpt(text),
                rationale,
            });
        }
    };

    let Some(rendered) = input.rendered else {
        if site.message.is_none() && !site.unknown_overload {
            emit(RuleId::NoMessage, "", format!("{} has no explanation message", site.assert_kind));
        }
        return findings;
    };
    let text = rendered.text.as_str();
    let top = input.category.map(|c| c.top);

    if top == Some(TopCategory::Text) && looks_like_code(text) {
        emit(
            RuleId::CodeAsLiteral,
            text,
            "message is a code expression in quotes and does not say what is expected".into(),
        );
    }

    if matches!(top, Some(TopCategory::Text | TopCategory::Combination)) && is_misleading(site, text) {
        emit(
            RuleId::Misleading,
            text,
            "message only restates the asserted expression and reads as the passing state".into(),
        );
    }

    if top == Some(TopCategory::Text) {
        let words = input.metrics.map_or_else(|| readability::segment(text).words.len(), |m| m.words);
        if words < config.min_words {
            let abbreviations = abbreviations(text, lexicon);
            let mut rationale = format!(
                "message has {words} word{} (minimum {})",
                if words == 1 { "" } else { "s" },
                config.min_words
            );
            if !abbreviations.is_empty() {
                rationale.push_str(&format!("; unexplained abbreviation {}", abbreviations.join(", ")));
            }
            emit(RuleId::TooShort, text, rationale);
        }
    }

    if !text.trim().is_empty() && !text.chars().any(char::is_alphabetic) {
        emit(RuleId::DigitsOnly, text, "message contains no words, only digits or symbols".into());
    }
    findings
}

fn code_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)*(\(\))?$").expect("valid pattern")
    })
}

/// `values.size()`, `getName()`, `maxValue` and `max_value` look like code;
/// a plain word does not.
pub fn looks_like_code(text: &str) -> bool {
    let t = text.trim();
    if !code_regex().is_match(t) {
        return false;
    }
    if t.contains('.') || t.ends_with("()") {
        return true;
    }
    let first_lower = t.chars().next().is_some_and(char::is_lowercase);
    let camel = t.chars().skip(1).any(char::is_uppercase);
    let inner_underscore = t.trim_matches('_').contains('_');
    first_lower && (camel || inner_underscore)
}

const STOPWORDS: &[&str] = &[
    "a", "an", "the", "is", "are", "be", "was", "were", "it", "its", "this", "that", "of", "to",
    "in", "on", "for", "with", "and", "or", "as", "at", "by", "should", "must", "has", "have",
];

const UN_WORDS: &[&str] = &[
    "under", "until", "unit", "unique", "union", "universal", "universe", "unless", "uniform",
    "unicode", "units", "unity",
];

fn is_negation(word: &str) -> bool {
    matches!(word, "not" | "no" | "never" | "missing" | "cannot" | "none" | "nothing")
        || word.contains("n't")
        || word.starts_with("un") && word.len() > 3 && !UN_WORDS.iter().any(|w| word.starts_with(w))
}

fn is_misleading(site: &AssertionSite, text: &str) -> bool {
    if !matches!(
        site.assert_kind.as_str(),
        "assertTrue" | "assertFalse" | "assertNull" | "assertNotNull"
    ) {
        return false;
    }
    let Some(asserted) = site.args.last() else { return false };
    let words: Vec<String> = readability::segment(text)
        .words
        .iter()
        .map(|w| w.to_lowercase())
        .collect();
    if words.iter().any(|w| is_negation(w)) {
        return false;
    }
    let content: BTreeSet<&str> = words
        .iter()
        .map(String::as_str)
        .filter(|w| !STOPWORDS.contains(w) && w.chars().any(char::is_alphabetic))
        .collect();
    if content.is_empty() {
        return false;
    }
    let asserted_text = readability::render(&MessageExpr::from_expr(asserted)).text;
    let terms: BTreeSet<String> = readability::segment(&asserted_text)
        .words
        .iter()
        .map(|w| w.to_lowercase())
        .collect();
    content.iter().all(|w| terms.contains(*w))
}

/// All-caps tokens of up to four letters that the lexicon does not know.
fn abbreviations(text: &str, lexicon: &Lexicon) -> Vec<String> {
    readability::segment(text)
        .words
        .into_iter()
        .filter(|w| {
            let n = w.chars().count();
            (2..=4).contains(&n)
                && w.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
                && w.chars().any(|c| c.is_ascii_uppercase())
                && !lexicon.contains(w)
        })
        .collect()
}
