//! Java tokenizer.
//!
//! Covers the lexical grammar closely enough to find call expressions and
//! argument boundaries: comments and whitespace are dropped, string, char
//! and text-block literals become single tokens carrying their decoded
//! value. Anything unrecognized becomes an [`TokenKind::Error`] token so
//! that lexing never aborts.

use crate::source::{Position, SourceFile, Span};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Identifiers and keywords alike; the parser decides which is which.
    Ident(String),
    /// Decoded value of a `"..."` literal or a `"""` text block.
    Str(String),
    /// Decoded value of a `'...'` literal.
    Char(String),
    /// Raw text of a numeric literal.
    Number(String),
    /// Operator or separator.
    Punct(&'static str),
    /// A character the lexer does not understand.
    Error(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        matches!(&self.kind, TokenKind::Punct(q) if *q == p)
    }

    pub fn is_ident(&self, name: &str) -> bool {
        matches!(&self.kind, TokenKind::Ident(n) if n == name)
    }

    pub fn ident(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Ident(n) => Some(n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub message: String,
    pub position: Position,
}

#[derive(Debug, Clone, Default)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub errors: Vec<LexError>,
}

// Longest first. `>>` and `>>>` are deliberately absent so that nested
// generic closers stay separate tokens.
const PUNCTS: &[&str] = &[
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=",
    "/=", "&=", "|=", "^=", "%=", "<<", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=",
    ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

pub fn lex(source: &SourceFile) -> Lexed {
    Lexer {
        src: source.content(),
        file: source,
        pos: 0,
        out: Lexed::default(),
    }
    .run()
}

struct Lexer<'a> {
    src: &'a str,
    file: &'a SourceFile,
    pos: usize,
    out: Lexed,
}

impl<'a> Lexer<'a> {
    fn run(mut self) -> Lexed {
        while let Some(c) = self.peek() {
            let start = self.pos;
            if c.is_whitespace() {
                self.bump();
            } else if self.rest().starts_with("//") {
                self.skip_to_line_end();
            } else if self.rest().starts_with("/*") {
                match self.rest()[2..].find("*/") {
                    Some(i) => self.pos += 2 + i + 2,
                    None => {
                        self.error(start, "unterminated block comment");
                        self.skip_past_newline();
                    }
                }
            } else if self.rest().starts_with("\"\"\"") {
                self.text_block(start);
            } else if c == '"' {
                self.string(start);
            } else if c == '\'' {
                self.char_lit(start);
            } else if c.is_ascii_digit()
                || (c == '.' && self.rest()[1..].starts_with(|d: char| d.is_ascii_digit()))
            {
                self.number(start);
            } else if is_ident_start(c) {
                while self.peek().is_some_and(is_ident_part) {
                    self.bump();
                }
                let text = self.src[start..self.pos].to_string();
                self.push(TokenKind::Ident(text), start);
            } else if let Some(p) = PUNCTS.iter().find(|p| self.rest().starts_with(**p)) {
                self.pos += p.len();
                self.push(TokenKind::Punct(p), start);
            } else {
                self.bump();
                self.push(TokenKind::Error(c), start);
            }
        }
        self.out
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, start: usize) {
        self.out.tokens.push(Token {
            kind,
            span: Span::new(start, self.pos),
        });
    }

    fn error(&mut self, at: usize, message: &str) {
        self.out.errors.push(LexError {
            message: message.to_string(),
            position: self.file.position(at),
        });
    }

    fn skip_to_line_end(&mut self) {
        match self.rest().find('\n') {
            Some(i) => self.pos += i,
            None => self.pos = self.src.len(),
        }
    }

    fn skip_past_newline(&mut self) {
        match self.rest().find('\n') {
            Some(i) => self.pos += i + 1,
            None => self.pos = self.src.len(),
        }
    }

    fn number(&mut self, start: usize) {
        let hex = self.rest().starts_with("0x") || self.rest().starts_with("0X");
        if hex {
            self.pos += 2;
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.bump();
                let exp = if hex { matches!(c, 'p' | 'P') } else { matches!(c, 'e' | 'E') };
                if exp && matches!(self.peek(), Some('+' | '-')) {
                    self.bump();
                }
            } else if c == '.' && !self.rest()[1..].starts_with('.') {
                // `1.foo` is not Java, so a dot always belongs to the literal
                self.bump();
            } else {
                break;
            }
        }
        let raw = self.src[start..self.pos].to_string();
        self.push(TokenKind::Number(raw), start);
    }

    fn string(&mut self, start: usize) {
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some('\n') | Some('\r') => {
                    self.error(start, "unterminated string literal");
                    self.push(TokenKind::Str(value), start);
                    self.skip_past_newline();
                    return;
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => self.escape(&mut value),
                Some(c) => {
                    self.bump();
                    value.push(c);
                }
            }
        }
        self.push(TokenKind::Str(value), start);
    }

    fn char_lit(&mut self, start: usize) {
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some('\n') | Some('\r') => {
                    self.error(start, "unterminated character literal");
                    self.push(TokenKind::Char(value), start);
                    self.skip_past_newline();
                    return;
                }
                Some('\'') => {
                    self.bump();
                    break;
                }
                Some('\\') => self.escape(&mut value),
                Some(c) => {
                    self.bump();
                    value.push(c);
                }
            }
        }
        self.push(TokenKind::Char(value), start);
    }

    fn text_block(&mut self, start: usize) {
        self.pos += 3;
        // opening delimiter must be followed by a line terminator
        let header_end = self.rest().find('\n');
        let Some(close) = self.rest().find("\"\"\"").map(|i| self.pos + i).and_then(|mut c| {
            // a `\"""` escape does not close the block
            while self.src[..c].ends_with('\\') && !self.src[..c].ends_with("\\\\") {
                c = c + 1 + self.src[c + 1..].find("\"\"\"")?;
            }
            Some(c)
        }) else {
            self.error(start, "unterminated text block");
            self.push(TokenKind::Str(String::new()), start);
            self.skip_past_newline();
            return;
        };
        let body_start = match header_end {
            Some(i) if self.pos + i < close => self.pos + i + 1,
            _ => self.pos,
        };
        let raw = &self.src[body_start..close];
        let value = decode_text_block(raw);
        self.pos = close + 3;
        self.push(TokenKind::Str(value), start);
    }

    /// Consumes an escape sequence starting at a backslash.
    fn escape(&mut self, out: &mut String) {
        self.bump();
        let Some(c) = self.bump() else { return };
        match c {
            'n' => out.push('\n'),
            't' => out.push('\t'),
            'b' => out.push('\u{8}'),
            'r' => out.push('\r'),
            'f' => out.push('\u{c}'),
            's' => out.push(' '),
            '0'..='7' => {
                let mut v = c.to_digit(8).unwrap_or(0);
                let max_digits = if c <= '3' { 3 } else { 2 };
                for _ in 1..max_digits {
                    match self.peek().and_then(|d| d.to_digit(8)) {
                        Some(d) => {
                            self.bump();
                            v = v * 8 + d;
                        }
                        None => break,
                    }
                }
                out.extend(char::from_u32(v));
            }
            'u' => {
                while self.peek() == Some('u') {
                    self.bump();
                }
                let hex: String = self.rest().chars().take(4).collect();
                match (hex.len() == 4).then(|| u32::from_str_radix(&hex, 16).ok()).flatten() {
                    Some(unit) => {
                        self.pos += 4;
                        self.push_utf16(out, unit);
                    }
                    None => out.push_str("\\u"),
                }
            }
            other => out.push(other),
        }
    }

    /// Appends one UTF-16 code unit, pairing a high surrogate with a
    /// following `\uXXXX` low surrogate when present.
    fn push_utf16(&mut self, out: &mut String, unit: u32) {
        if (0xD800..0xDC00).contains(&unit) {
            let rest = self.rest();
            if let Some(after) = rest.strip_prefix("\\u") {
                let digits = after.trim_start_matches('u');
                let skipped = rest.len() - digits.len();
                if let Some(low) = digits
                    .get(..4)
                    .and_then(|h| u32::from_str_radix(h, 16).ok())
                    .filter(|l| (0xDC00..0xE000).contains(l))
                {
                    self.pos += skipped + 4;
                    let cp = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
                    out.extend(char::from_u32(cp));
                    return;
                }
            }
        }
        out.push(char::from_u32(unit).unwrap_or('\u{fffd}'));
    }
}

fn is_ident_start(c: char) -> bool {
    c == '_' || c == '$' || c.is_alphabetic()
}

fn is_ident_part(c: char) -> bool {
    c == '_' || c == '$' || c.is_alphanumeric()
}

/// Strips incidental indentation and trailing spaces from a text block body,
/// then interprets escapes.
fn decode_text_block(raw: &str) -> String {
    let lines: Vec<&str> = raw.split('\n').map(|l| l.trim_end_matches('\r')).collect();
    let last_is_closing = lines.last().is_some_and(|l| l.trim().is_empty());
    let indent = lines
        .iter()
        .enumerate()
        .filter(|(i, l)| !l.trim().is_empty() || (*i == lines.len() - 1 && last_is_closing))
        .map(|(_, l)| l.len() - l.trim_start().len())
        .min()
        .unwrap_or(0);
    let mut stripped = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        if i == lines.len() - 1 && last_is_closing {
            // the closing delimiter sits on its own line
            stripped.push(String::new());
            continue;
        }
        let body = l.get(indent..).unwrap_or_else(|| l.trim_start());
        stripped.push(body.trim_end().to_string());
    }
    let joined = stripped.join("\n");

    let mut out = String::with_capacity(joined.len());
    let mut chars = joined.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('s') => out.push(' '),
            Some('b') => out.push('\u{8}'),
            Some('f') => out.push('\u{c}'),
            Some('\n') => {}
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}
