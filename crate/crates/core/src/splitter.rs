//! Identifier splitting on `_`, `$`, camelCase and letter/digit boundaries.
//!
//! No dictionary is consulted, so same-case compounds such as `runtime`
//! stay whole.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermList {
    pub origin: String,
    pub terms: Vec<String>,
}

impl TermList {
    pub fn joined(&self, sep: &str) -> String {
        self.terms.join(sep)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Upper,
    Lower,
    Digit,
}

fn class(c: char) -> Class {
    if c.is_numeric() {
        Class::Digit
    } else if c.is_uppercase() {
        Class::Upper
    } else {
        Class::Lower
    }
}

/// Splits an identifier into its terms, preserving case.
///
/// An uppercase run followed by a lowercase letter gives up its last
/// capital to the following word, so `HTMLParser` becomes `HTML`, `Parser`.
pub fn split(name: &str) -> TermList {
    let mut terms = Vec::new();
    for chunk in name.split(['_', '$']).filter(|c| !c.is_empty()) {
        split_chunk(chunk, &mut terms);
    }
    TermList {
        origin: name.to_string(),
        terms,
    }
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut start = 0;
    for i in 1..chars.len() {
        let prev = class(chars[i - 1]);
        let cur = class(chars[i]);
        let boundary = match (prev, cur) {
            (Class::Digit, Class::Digit) => false,
            (Class::Digit, _) | (_, Class::Digit) => true,
            (Class::Lower, Class::Upper) => true,
            (Class::Upper, Class::Upper) => {
                chars.get(i + 1).is_some_and(|&n| class(n) == Class::Lower)
            }
            _ => false,
        };
        if boundary {
            out.push(chars[start..i].iter().collect());
            start = i;
        }
    }
    if start < chars.len() {
        out.push(chars[start..].iter().collect());
    }
}

/// Splits and joins with single spaces.
pub fn split_to_words(name: &str) -> String {
    split(name).joined(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(s: &str) -> Vec<String> {
        split(s).terms
    }

    #[test]
    fn get_lower_bound() {
        assert_eq!(terms("getLowerBound"), ["get", "Lower", "Bound"]);
    }

    #[test]
    fn single_term() {
        assert_eq!(terms("count"), ["count"]);
        assert_eq!(terms("runtime"), ["runtime"]);
    }

    #[test]
    fn snake_case() {
        assert_eq!(terms("to_string"), ["to", "string"]);
        assert_eq!(terms("NOFOLLOW_LINKS"), ["NOFOLLOW", "LINKS"]);
        assert_eq!(terms("__a$$b_"), ["a", "b"]);
    }

    #[test]
    fn acronyms_and_digits() {
        assert_eq!(terms("HTML2Text"), ["HTML", "2", "Text"]);
        assert_eq!(terms("HTMLParser"), ["HTML", "Parser"]);
        assert_eq!(terms("utf8Decoder"), ["utf", "8", "Decoder"]);
        assert_eq!(terms("c1"), ["c", "1"]);
    }

    #[test]
    fn separators_only() {
        assert!(terms("_$_").is_empty());
    }
}
