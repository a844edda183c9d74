//! Prose rendering of messages and the Flesch readability scores.
//!
//! Reading ease is `206.835 - 1.015 (W/S) - 84.6 (Y/W)` and the
//! Flesch-Kincaid grade is `0.39 (W/S) + 11.8 (Y/W) - 15.59`, where W is
//! the word count, S the sentence count and Y the syllable count. Ratios
//! are kept at full precision; rounding happens only when reporting.

use serde::{Deserialize, Serialize};

use crate::ast::{CallExpr, Expr};
use crate::junit::MessageExpr;
use crate::splitter;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedMessage {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextMetrics {
    pub words: usize,
    pub sentences: usize,
    pub syllables: usize,
    pub polysyllables: usize,
    /// `None` when the text has no words.
    pub flesch_reading_ease: Option<f64>,
    pub fk_grade: Option<f64>,
}

impl TextMetrics {
    pub fn is_unscorable(&self) -> bool {
        self.flesch_reading_ease.is_none()
    }
}

pub fn flesch_reading_ease(words: usize, sentences: usize, syllables: usize) -> f64 {
    let w = words as f64;
    206.835 - 1.015 * (w / sentences as f64) - 84.6 * (syllables as f64 / w)
}

pub fn flesch_kincaid_grade(words: usize, sentences: usize, syllables: usize) -> f64 {
    let w = words as f64;
    0.39 * (w / sentences as f64) + 11.8 * (syllables as f64 / w) - 15.59
}

/// Rounds to two decimals the way the reference readability tooling does:
/// add half away from zero, then floor. Negative scores therefore round
/// down, e.g. -217.18 → -217.19.
pub fn round_score(x: f64) -> f64 {
    ((x * 100.0) + 0.5f64.copysign(x)).floor() / 100.0
}

/// Renders a message as prose. String parts are kept verbatim and adjacent
/// literals concatenate as in Java. Identifier-like parts become their split
/// terms; a single space separates them from neighbours unless whitespace is
/// already there.
pub fn render(message: &MessageExpr) -> RenderedMessage {
    let mut text = String::new();
    let mut prev_was_words = false;
    for part in &message.parts {
        let (piece, is_words) = match part {
            Expr::StringLiteral(s) | Expr::CharLiteral(s) => (s.clone(), false),
            other => (render_words(other), true),
        };
        if piece.is_empty() {
            continue;
        }
        let needs_space = (is_words || prev_was_words)
            && text.chars().last().is_some_and(|c| !c.is_whitespace())
            && !piece.starts_with(char::is_whitespace);
        if needs_space {
            text.push(' ');
        }
        text.push_str(&piece);
        prev_was_words = is_words;
    }
    RenderedMessage { text }
}

fn render_words(expr: &Expr) -> String {
    let mut words = Vec::new();
    collect_words(expr, &mut words);
    words.join(" ")
}

fn collect_words(expr: &Expr, out: &mut Vec<String>) {
    match expr {
        Expr::StringLiteral(s) | Expr::CharLiteral(s) => {
            if !s.is_empty() {
                out.push(s.clone());
            }
        }
        Expr::NumericLiteral(n) => out.push(n.clone()),
        Expr::BooleanLiteral(b) => out.push(b.to_string()),
        Expr::NullLiteral => out.push("null".to_string()),
        Expr::Identifier(name) => push_split(name, out),
        Expr::FieldAccess(chain) => chain.iter().for_each(|n| push_split(n, out)),
        Expr::MethodCall(call) => collect_call_words(call, out),
        Expr::BinaryConcat(l, r) => {
            collect_words(l, out);
            collect_words(r, out);
        }
        Expr::Other(raw) => {
            for word in raw.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$')) {
                if !word.is_empty() {
                    push_split(word, out);
                }
            }
        }
    }
}

fn collect_call_words(call: &CallExpr, out: &mut Vec<String>) {
    if let Some(r) = &call.receiver {
        collect_words(r, out);
    }
    push_split(&call.name, out);
}

fn push_split(name: &str, out: &mut Vec<String>) {
    let terms = splitter::split(name);
    if !terms.terms.is_empty() {
        out.push(terms.joined(" "));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmented {
    pub words: Vec<String>,
    pub sentences: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\''
}

/// Splits text into words and counts sentences. Words are maximal runs of
/// letters, digits and apostrophes (edge apostrophes trimmed). A sentence
/// ends at a run of `.`, `!` or `?` followed by whitespace or the end.
pub fn segment(text: &str) -> Segmented {
    let mut words = Vec::new();
    let mut sentences = 0;
    let mut words_in_sentence = 0;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            let w: String = chars[start..i].iter().collect();
            let w = w.trim_matches('\'');
            if !w.is_empty() {
                words.push(w.to_string());
                words_in_sentence += 1;
            }
            continue;
        }
        if matches!(c, '.' | '!' | '?') {
            let mut j = i;
            while j < chars.len() && matches!(chars[j], '.' | '!' | '?') {
                j += 1;
            }
            if (j == chars.len() || chars[j].is_whitespace()) && words_in_sentence > 0 {
                sentences += 1;
                words_in_sentence = 0;
            }
            i = j;
            continue;
        }
        i += 1;
    }
    if words_in_sentence > 0 {
        sentences += 1;
    }
    Segmented { words, sentences }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Vowel-group syllable estimate.
///
/// Counts maximal runs of `aeiouy`, drops a silent final `e` (kept in a
/// consonant + `le` ending), and never returns less than one. Tokens with
/// no letters count as one syllable.
pub fn count_syllables(word: &str) -> usize {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if letters.is_empty() {
        return 1;
    }
    let mut count = 0;
    let mut in_vowels = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !in_vowels {
            count += 1;
        }
        in_vowels = v;
    }
    let n = letters.len();
    if n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) && count > 1 {
        let consonant_le = letters[n - 2] == 'l' && n >= 3 && !is_vowel(letters[n - 3]);
        if !consonant_le {
            count -= 1;
        }
    }
    count.max(1)
}

pub fn score(rendered: &RenderedMessage) -> TextMetrics {
    score_text(&rendered.text)
}

pub fn score_text(text: &str) -> TextMetrics {
    let seg = segment(text);
    let per_word: Vec<usize> = seg.words.iter().map(|w| count_syllables(w)).collect();
    let words = seg.words.len();
    let syllables = per_word.iter().sum();
    let polysyllables = per_word.iter().filter(|&&s| s >= 3).count();
    let (fre, fk) = if words == 0 {
        (None, None)
    } else {
        (
            Some(flesch_reading_ease(words, seg.sentences, syllables)),
            Some(flesch_kincaid_grade(words, seg.sentences, syllables)),
        )
    };
    TextMetrics {
        words,
        sentences: seg.sentences,
        syllables,
        polysyllables,
        flesch_reading_ease: fre,
        fk_grade: fk,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::Position;

    fn msg(parts: Vec<Expr>) -> MessageExpr {
        MessageExpr {
            parts,
            raw_source: String::new(),
        }
    }

    fn call(receiver: &str, name: &str) -> Expr {
        Expr::MethodCall(Box::new(CallExpr {
            receiver: Some(Box::new(Expr::Identifier(receiver.into()))),
            name: name.into(),
            args: vec![],
            location: Position::default(),
            raw: format!("{receiver}.{name}()"),
        }))
    }

    #[test]
    fn syllables() {
        assert_eq!(count_syllables("works"), 1);
        assert_eq!(count_syllables("Serialization"), 5);
        assert_eq!(count_syllables("a"), 1);
        assert_eq!(count_syllables("file"), 1);
        assert_eq!(count_syllables("value"), 2);
        assert_eq!(count_syllables("table"), 2);
        assert_eq!(count_syllables("the"), 1);
        assert_eq!(count_syllables("42"), 1);
        assert_eq!(count_syllables("different"), 3);
    }

    #[test]
    fn segmentation() {
        let s = segment("Results should not be empty");
        assert_eq!((s.words.len(), s.sentences), (5, 1));
        let s = segment("Error in predicate but not thrown!");
        assert_eq!((s.words.len(), s.sentences), (6, 1));
        let s = segment("");
        assert_eq!((s.words.len(), s.sentences), (0, 0));
        let s = segment("One. Two?! three... values.size()");
        assert_eq!(s.sentences, 4);
        assert_eq!(s.words, ["One", "Two", "three", "values", "size"]);
        assert_eq!(segment("doesn't 'quoted'").words, ["doesn't", "quoted"]);
    }

    #[test]
    fn render_rules() {
        let m = msg(vec![Expr::StringLiteral("Results should not be empty".into())]);
        assert_eq!(render(&m).text, "Results should not be empty");
        assert_eq!(render(&msg(vec![call("r", "getLowerBound")])).text, "r get Lower Bound");
        let m = msg(vec![Expr::StringLiteral("".into()), Expr::Identifier("c".into())]);
        assert_eq!(render(&m).text, "c");
        let m = msg(vec![
            Expr::StringLiteral("file ".into()),
            call("file", "getAbsolutePath"),
            Expr::StringLiteral(" should exist".into()),
        ]);
        assert_eq!(render(&m).text, "file file get Absolute Path should exist");
        let m = msg(vec![
            Expr::StringLiteral("Expected: ".into()),
            Expr::Identifier("expected".into()),
            Expr::StringLiteral(", got:".into()),
            Expr::Identifier("actual".into()),
        ]);
        assert_eq!(render(&m).text, "Expected: expected , got: actual");
        let m = msg(vec![Expr::StringLiteral("a".into()), Expr::StringLiteral("b".into())]);
        assert_eq!(render(&m).text, "ab");
    }

    #[test]
    fn exact_anchors() {
        let works = score_text("works");
        assert_eq!(round_score(works.flesch_reading_ease.unwrap()), 121.22);
        let ser = score_text("Serialization");
        assert_eq!(ser.syllables, 5);
        assert_eq!(round_score(ser.flesch_reading_ease.unwrap()), -217.19);
    }

    #[test]
    fn empty_text_is_unscorable() {
        let m = score_text("  ... ");
        assert!(m.is_unscorable());
        assert_eq!(m.words, 0);
        assert_eq!(m.sentences, 0);
    }

    #[test]
    fn rounding_matches_reference_tool() {
        assert_eq!(round_score(121.22000000000001), 121.22);
        assert_eq!(round_score(-27.675), -27.68);
        assert_eq!(round_score(78.874), 78.87);
        assert_eq!(round_score(0.0), 0.0);
    }
}
