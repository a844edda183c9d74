//! Lexicon and suffix-rule part-of-speech tagger for text messages.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const CLOSED_CLASS: &str = include_str!("../data/closed_class.tsv");
const OPEN_CLASS: &str = include_str!("../data/open_class.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = "Noun-singular")]
    NounSingular,
    #[serde(rename = "Noun-plural")]
    NounPlural,
    #[serde(rename = "Proper-noun")]
    ProperNoun,
    Adjective,
    #[serde(rename = "Verb-base")]
    VerbBase,
    #[serde(rename = "Verb-past")]
    VerbPast,
    #[serde(rename = "Verb-past-participle")]
    VerbPastParticiple,
    #[serde(rename = "Verb-3rd")]
    Verb3rd,
    Adverb,
    Determiner,
    Preposition,
    Modal,
    Pronoun,
    Conjunction,
    Number,
    Symbol,
    Unknown,
}

impl PosTag {
    pub const ALL: [PosTag; 17] = [
        PosTag::NounSingular,
        PosTag::NounPlural,
        PosTag::ProperNoun,
        PosTag::Adjective,
        PosTag::VerbBase,
        PosTag::VerbPast,
        PosTag::VerbPastParticiple,
        PosTag::Verb3rd,
        PosTag::Adverb,
        PosTag::Determiner,
        PosTag::Preposition,
        PosTag::Modal,
        PosTag::Pronoun,
        PosTag::Conjunction,
        PosTag::Number,
        PosTag::Symbol,
        PosTag::Unknown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PosTag::NounSingular => "Noun-singular",
            PosTag::NounPlural => "Noun-plural",
            PosTag::ProperNoun => "Proper-noun",
            PosTag::Adjective => "Adjective",
            PosTag::VerbBase => "Verb-base",
            PosTag::VerbPast => "Verb-past",
            PosTag::VerbPastParticiple => "Verb-past-participle",
            PosTag::Verb3rd => "Verb-3rd",
            PosTag::Adverb => "Adverb",
            PosTag::Determiner => "Determiner",
            PosTag::Preposition => "Preposition",
            PosTag::Modal => "Modal",
            PosTag::Pronoun => "Pronoun",
            PosTag::Conjunction => "Conjunction",
            PosTag::Number => "Number",
            PosTag::Symbol => "Symbol",
            PosTag::Unknown => "Unknown",
        }
    }

    /// Human label for tables, e.g. `Noun (singular)`.
    pub fn label(self) -> &'static str {
        match self {
            PosTag::NounSingular => "Noun (singular)",
            PosTag::NounPlural => "Noun (plural)",
            PosTag::ProperNoun => "Proper noun",
            PosTag::VerbBase => "Verb (base form)",
            PosTag::VerbPast => "Verb (past tense)",
            PosTag::VerbPastParticiple => "Verb (past participle)",
            PosTag::Verb3rd => "Verb (3rd person singular)",
            other => other.name(),
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown part-of-speech tag `{0}`")]
pub struct UnknownTag(pub String);

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: expected `word<TAB>tag`")]
    Format { line: usize },
    #[error("line {line}: {source}")]
    Tag { line: usize, source: UnknownTag },
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    closed: HashMap<String, PosTag>,
    open: HashMap<String, PosTag>,
}

fn parse_entries(text: &str) -> Result<Vec<(String, PosTag)>, LexiconError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, tag) = line
            .split_once('\t')
            .ok_or(LexiconError::Format { line: idx + 1 })?;
        let tag = tag
            .trim()
            .parse()
            .map_err(|source| LexiconError::Tag { line: idx + 1, source })?;
        out.push((word.trim().to_lowercase(), tag));
    }
    Ok(out)
}

impl Lexicon {
    /// The lexicon shipped with the crate.
    pub fn bundled() -> &'static Lexicon {
        static BUNDLED: OnceLock<Lexicon> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            let mut lex = Lexicon::default();
            lex.closed.extend(parse_entries(CLOSED_CLASS).expect("bundled closed-class lexicon"));
            lex.open.extend(parse_entries(OPEN_CLASS).expect("bundled open-class lexicon"));
            lex
        })
    }

    /// Adds entries from a `word<TAB>tag` document; they win over existing ones.
    pub fn merge_overrides(&mut self, text: &str) -> Result<usize, LexiconError> {
        let entries = parse_entries(text)?;
        let n = entries.len();
        for (word, tag) in entries {
            self.closed.remove(&word);
            self.open.insert(word, tag);
        }
        Ok(n)
    }

    pub fn len(&self) -> usize {
        self.closed.len() + self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup(&self, lowercase_word: &str) -> Option<PosTag> {
        self.closed
            .get(lowercase_word)
            .or_else(|| self.open.get(lowercase_word))
            .copied()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.lookup(&word.to_lowercase()).is_some()
    }
}

fn has_internal_capital(word: &str) -> bool {
    word.chars().skip(1).any(char::is_uppercase)
}

fn suffix_tag(lower: &str, lexicon: &Lexicon) -> Option<PosTag> {
    let ends = |s: &str| lower.len() > s.len() + 1 && lower.ends_with(s);
    if ends("ion") || ends("ness") || ends("ity") {
        Some(PosTag::NounSingular)
    } else if ends("ly") {
        Some(PosTag::Adverb)
    } else if ends("ed") {
        Some(PosTag::VerbPastParticiple)
    } else if ends("ing") {
        Some(PosTag::VerbBase)
    } else if ends("able") || ends("ful") || ends("ive") || ends("ous") || ends("al") {
        Some(PosTag::Adjective)
    } else if lower.len() > 2 && lower.ends_with('s') && !lower.ends_with("ss") {
        let stem = &lower[..lower.len() - 1];
        let stem_es = lower.strip_suffix("es");
        let is_noun = |w: &str| {
            lexicon.lookup(w) == Some(PosTag::NounSingular) || suffix_tag(w, lexicon) == Some(PosTag::NounSingular)
        };
        (is_noun(stem) || stem_es.is_some_and(is_noun)).then_some(PosTag::NounPlural)
    } else {
        None
    }
}

fn tag_word(word: &str, sentence_initial: bool, lexicon: &Lexicon) -> PosTag {
    if !word.is_empty() && word.chars().all(|c| c.is_numeric()) {
        return PosTag::Number;
    }
    if !word.chars().any(char::is_alphanumeric) {
        return PosTag::Symbol;
    }
    let lower = word.to_lowercase();
    if sentence_initial && (lower == "expected" || lower == "unexpected") {
        return PosTag::VerbPastParticiple;
    }
    let internal_capital = has_internal_capital(word);
    if !internal_capital {
        if let Some(tag) = lexicon.lookup(&lower) {
            return tag;
        }
        if let Some(tag) = suffix_tag(&lower, lexicon) {
            return tag;
        }
    } else if let Some(tag) = lexicon.closed.get(&lower) {
        return *tag;
    }
    if word.chars().next().is_some_and(char::is_uppercase) {
        return PosTag::ProperNoun;
    }
    if word.chars().any(char::is_numeric) && word.chars().any(char::is_alphabetic) {
        return PosTag::ProperNoun;
    }
    PosTag::Unknown
}

/// Tags every word. The first word counts as sentence-initial.
pub fn tag_sentence<S: AsRef<str>>(words: &[S], lexicon: &Lexicon) -> Vec<(String, PosTag)> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let w = w.as_ref();
            (w.to_string(), tag_word(w, i == 0, lexicon))
        })
        .collect()
}

pub const MAX_PREFIX: usize = 3;

/// The 1-, 2- and 3-tag prefixes of a tagged message, shortest first.
pub fn prefixes(tags: &[PosTag]) -> Vec<Vec<PosTag>> {
    (1..=MAX_PREFIX.min(tags.len())).map(|n| tags[..n].to_vec()).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternRow {
    pub tags: Vec<PosTag>,
    pub count: u64,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternTable {
    pub prefix_len: usize,
    pub total: u64,
    /// Most frequent patterns, ties broken by tag order.
    pub top: Vec<PatternRow>,
    pub others: Option<PatternRow>,
}

impl PartialEq for PatternRow {
    fn eq(&self, other: &Self) -> bool {
        self.tags == other.tags && self.count == other.count && self.percent.to_bits() == other.percent.to_bits()
    }
}
impl Eq for PatternRow {}

/// Merge-safe prefix pattern counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCounts {
    pub by_len: BTreeMap<usize, BTreeMap<Vec<PosTag>, u64>>,
}

impl PatternCounts {
    pub fn add_prefixes(&mut self, prefixes: &[Vec<PosTag>]) {
        for p in prefixes {
            *self.by_len.entry(p.len()).or_default().entry(p.clone()).or_default() += 1;
        }
    }

    pub fn merge(&mut self, other: &PatternCounts) {
        for (len, counts) in &other.by_len {
            let mine = self.by_len.entry(*len).or_default();
            for (tags, n) in counts {
                *mine.entry(tags.clone()).or_default() += n;
            }
        }
    }

    /// Frequency tables for prefix lengths 1 to 3 with the `k` most common
    /// patterns and an `Others` remainder.
    pub fn tables(&self, k: usize) -> Vec<PatternTable> {
        (1..=MAX_PREFIX)
            .map(|len| {
                let empty = BTreeMap::new();
                let counts = self.by_len.get(&len).unwrap_or(&empty);
                let total: u64 = counts.values().sum();
                let pct = |n: u64| if total == 0 { 0.0 } else { n as f64 * 100.0 / total as f64 };
                let mut rows: Vec<(&Vec<PosTag>, u64)> = counts.iter().map(|(t, n)| (t, *n)).collect();
                rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
                let top: Vec<PatternRow> = rows
                    .iter()
                    .take(k)
                    .map(|(t, n)| PatternRow { tags: (*t).clone(), count: *n, percent: pct(*n) })
                    .collect();
                let rest: u64 = rows.iter().skip(k).map(|(_, n)| n).sum();
                let others = (rows.len() > k).then(|| PatternRow { tags: Vec::new(), count: rest, percent: pct(rest) });
                PatternTable { prefix_len: len, total, top, others }
            })
            .collect()
    }
}
