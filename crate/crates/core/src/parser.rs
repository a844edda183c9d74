//! Recognizer for the parts of Java that carry assertion calls.
//!
//! This is not a full grammar. Type declarations, annotations and method
//! bodies are recovered structurally; inside bodies every call expression is
//! parsed together with its argument trees. Constructs the parser does not
//! model end up as [`Expr::Other`] and are skipped by bracket matching, so a
//! strange statement never costs more than itself.

use serde::{Deserialize, Serialize};

use crate::ast::{CallExpr, ClassDecl, Expr, MethodDecl};
use crate::lexer::{lex, Token, TokenKind};
use crate::source::{Position, SourceFile, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Lex,
    Unbalanced,
    Syntax,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub position: Position,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutput {
    pub classes: Vec<ClassDecl>,
    pub errors: Vec<ParseError>,
    /// Set when bracket structure was broken and later classes may be missing.
    pub partial: bool,
}

const MAX_DEPTH: usize = 200;

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp", "default", "sealed", "non", "open",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

pub fn parse_file(source: &SourceFile) -> ParseOutput {
    let lexed = lex(source);
    let mut parser = Parser::new(source, lexed.tokens);
    parser.errors.extend(lexed.errors.into_iter().map(|e| ParseError {
        kind: ParseErrorKind::Lex,
        message: e.message,
        position: e.position,
    }));
    let classes = parser.compilation_unit();
    ParseOutput {
        classes,
        errors: parser.errors,
        partial: parser.partial,
    }
}

struct Parser<'a> {
    src: &'a SourceFile,
    toks: Vec<Token>,
    /// For each bracket token, the index of its partner.
    partner: Vec<Option<usize>>,
    errors: Vec<ParseError>,
    partial: bool,
    calls: Vec<CallExpr>,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a SourceFile, toks: Vec<Token>) -> Self {
        let mut p = Parser {
            src,
            partner: vec![None; toks.len()],
            toks,
            errors: Vec::new(),
            partial: false,
            calls: Vec::new(),
            depth: 0,
        };
        p.match_brackets();
        p
    }

    fn match_brackets(&mut self) {
        let mut stack: Vec<(usize, &'static str)> = Vec::new();
        for i in 0..self.toks.len() {
            let TokenKind::Punct(p) = self.toks[i].kind else { continue };
            let want = match p {
                "(" | "[" | "{" => {
                    stack.push((i, p));
                    continue;
                }
                ")" => "(",
                "]" => "[",
                "}" => "{",
                _ => continue,
            };
            match stack.iter().rposition(|(_, o)| *o == want) {
                Some(k) => {
                    for (j, _) in stack.drain(k + 1..) {
                        self.unbalanced(j, "unclosed bracket");
                    }
                    let (open, _) = stack.pop().expect("position found above");
                    self.partner[open] = Some(i);
                    self.partner[i] = Some(open);
                }
                None => self.unbalanced(i, "unmatched closing bracket"),
            }
        }
        for (j, _) in stack {
            self.unbalanced(j, "unclosed bracket");
        }
    }

    fn unbalanced(&mut self, tok: usize, message: &str) {
        self.partial = true;
        let position = self.src.position(self.toks[tok].span.start);
        self.errors.push(ParseError {
            kind: ParseErrorKind::Unbalanced,
            message: message.to_string(),
            position,
        });
    }

    fn punct(&self, i: usize, p: &str) -> bool {
        self.toks.get(i).is_some_and(|t| t.is_punct(p))
    }

    fn ident(&self, i: usize) -> Option<&str> {
        self.toks.get(i).and_then(Token::ident)
    }

    fn kw(&self, i: usize, k: &str) -> bool {
        self.ident(i) == Some(k)
    }

    fn pos(&self, i: usize) -> Position {
        let offset = self.toks.get(i).map_or(self.src.content().len(), |t| t.span.start);
        self.src.position(offset)
    }

    fn raw(&self, from: usize, to: usize) -> String {
        if from >= to || from >= self.toks.len() {
            return String::new();
        }
        let end = self.toks[(to - 1).min(self.toks.len() - 1)].span.end;
        self.src
            .slice(Span::new(self.toks[from].span.start, end))
            .to_string()
    }

    /// Index just past the bracket group starting at `i`, or `i + 1` for
    /// anything else. An unmatched opener swallows everything up to `limit`.
    fn hop(&self, i: usize, limit: usize) -> usize {
        match self.toks.get(i).map(|t| &t.kind) {
            Some(TokenKind::Punct("(" | "[" | "{")) => match self.partner[i] {
                Some(close) if close > i => (close + 1).min(limit.max(i + 1)),
                _ => limit.max(i + 1),
            },
            _ => i + 1,
        }
    }

    /// Closing partner of the opener at `i`, bounded by `limit`.
    fn close_of(&self, i: usize, limit: usize) -> usize {
        match self.partner[i] {
            Some(c) if c > i && c < limit => c,
            _ => limit,
        }
    }

    // ---- declarations -------------------------------------------------

    fn compilation_unit(&mut self) -> Vec<ClassDecl> {
        let end = self.toks.len();
        let mut imports = Vec::new();
        let mut classes = Vec::new();
        let mut annotations = Vec::new();
        let mut i = 0;
        while i < end {
            if self.kw(i, "package") {
                i = self.skip_past_semicolon(i, end);
            } else if self.kw(i, "import") {
                let stop = self.skip_past_semicolon(i, end);
                let path: String = self.toks[i + 1..stop]
                    .iter()
                    .filter(|t| !t.is_ident("static") && !t.is_punct(";"))
                    .map(|t| self.src.slice(t.span))
                    .collect();
                if !path.is_empty() {
                    imports.push(path);
                }
                i = stop;
            } else if self.punct(i, "@") && self.kw(i + 1, "interface") {
                i = self.skip_declaration(i, end);
                annotations.clear();
            } else if self.punct(i, "@") {
                let (name, next) = self.annotation(i, end);
                annotations.extend(name);
                i = next;
            } else if self.is_type_decl_start(i) {
                let taken = std::mem::take(&mut annotations);
                i = self.type_decl(i, end, taken, &mut classes);
            } else if self.ident(i).is_some_and(|k| MODIFIERS.contains(&k)) {
                i += 1;
            } else {
                annotations.clear();
                i = self.hop(i, end);
            }
        }
        for c in &mut classes {
            c.imports = imports.clone();
        }
        classes
    }

    fn is_type_decl_start(&self, i: usize) -> bool {
        matches!(self.ident(i), Some("class" | "interface" | "enum" | "record"))
            && self.ident(i + 1).is_some_and(|n| !is_keyword(n))
            && !self.punct(i.wrapping_sub(1), ".")
    }

    fn skip_past_semicolon(&self, mut i: usize, end: usize) -> usize {
        while i < end && !self.punct(i, ";") {
            if self.punct(i, "{") || self.punct(i, "}") {
                return i;
            }
            i = self.hop(i, end);
        }
        (i + 1).min(end)
    }

    /// Skips a declaration up to and including its body.
    fn skip_declaration(&self, mut i: usize, end: usize) -> usize {
        while i < end && !self.punct(i, "{") && !self.punct(i, ";") {
            i = self.hop(i, end);
        }
        if self.punct(i, "{") {
            self.hop(i, end)
        } else {
            (i + 1).min(end)
        }
    }

    /// Parses `@Name(...)` and returns the name and the index after it.
    fn annotation(&self, i: usize, end: usize) -> (Option<String>, usize) {
        let mut j = i + 1;
        let mut name = String::new();
        while let Some(part) = self.ident(j) {
            name.push_str(part);
            j += 1;
            if self.punct(j, ".") && self.ident(j + 1).is_some() {
                name.push('.');
                j += 1;
            } else {
                break;
            }
        }
        if self.punct(j, "(") {
            j = self.hop(j, end);
        }
        ((!name.is_empty()).then_some(name), j.max(i + 1).min(end.max(i + 1)))
    }

    fn type_decl(
        &mut self,
        i: usize,
        end: usize,
        annotations: Vec<String>,
        out: &mut Vec<ClassDecl>,
    ) -> usize {
        let is_enum = self.kw(i, "enum");
        let name = self.ident(i + 1).unwrap_or_default().to_string();
        let location = self.pos(i + 1);
        let mut superclass = None;
        let mut j = i + 2;
        while j < end && !self.punct(j, "{") {
            if self.punct(j, ";") || self.punct(j, "}") {
                return j + 1;
            }
            if self.kw(j, "extends") && superclass.is_none() && self.kw(i, "class") {
                let mut k = j + 1;
                let mut s = String::new();
                while let Some(part) = self.ident(k) {
                    s.push_str(part);
                    if self.punct(k + 1, ".") {
                        s.push('.');
                        k += 2;
                    } else {
                        k += 1;
                        break;
                    }
                }
                if !s.is_empty() {
                    superclass = Some(s);
                }
                j = k;
                continue;
            }
            if self.punct(j, "<") {
                j = self.skip_angles(j, end);
                continue;
            }
            j = self.hop(j, end);
        }
        if j >= end {
            return end;
        }
        let body_end = match self.partner[j] {
            Some(c) if c > j && c <= end => c,
            _ => {
                self.errors.push(ParseError {
                    kind: ParseErrorKind::Unbalanced,
                    message: format!("class `{name}` has no closing brace"),
                    position: location,
                });
                self.partial = true;
                end
            }
        };
        let idx = out.len();
        out.push(ClassDecl {
            name,
            annotations,
            imports: Vec::new(),
            superclass,
            methods: Vec::new(),
            location,
        });
        let methods = self.members(j + 1, body_end, is_enum, out);
        out[idx].methods = methods;
        (body_end + 1).min(end.max(body_end))
    }

    fn members(
        &mut self,
        start: usize,
        end: usize,
        is_enum: bool,
        out: &mut Vec<ClassDecl>,
    ) -> Vec<MethodDecl> {
        let mut i = start;
        if is_enum {
            while i < end && !self.punct(i, ";") {
                i = self.hop(i, end);
            }
            i += 1;
        }
        let mut methods = Vec::new();
        let mut annotations = Vec::new();
        while i < end {
            if self.punct(i, ";") {
                annotations.clear();
                i += 1;
            } else if self.punct(i, "@") && self.kw(i + 1, "interface") {
                annotations.clear();
                i = self.skip_declaration(i, end);
            } else if self.punct(i, "@") {
                let (name, next) = self.annotation(i, end);
                annotations.extend(name);
                i = next;
            } else if self.punct(i, "{") {
                // instance or static initializer
                annotations.clear();
                i = self.hop(i, end);
            } else if self.is_type_decl_start(i) {
                let taken = std::mem::take(&mut annotations);
                i = self.type_decl(i, end, taken, out);
            } else if self.ident(i).is_some_and(|k| MODIFIERS.contains(&k)) {
                i += 1;
            } else {
                let taken = std::mem::take(&mut annotations);
                i = self.member(i, end, taken, &mut methods);
            }
        }
        methods
    }

    /// A field or method starting at `i`. Returns the index after it.
    fn member(
        &mut self,
        i: usize,
        end: usize,
        mut annotations: Vec<String>,
        methods: &mut Vec<MethodDecl>,
    ) -> usize {
        let mut j = i;
        while j < end {
            if self.punct(j, "@") {
                let (name, next) = self.annotation(j, end);
                annotations.extend(name);
                j = next;
            } else if self.punct(j, "<") {
                j = self.skip_angles(j, end);
            } else if self.ident(j).is_some() && self.punct(j + 1, "(") {
                return self.method(j, end, annotations, methods);
            } else if self.punct(j, "=") || self.punct(j, ";") {
                let mut k = j;
                while k < end && !self.punct(k, ";") {
                    k = self.hop(k, end);
                }
                return (k + 1).min(end.max(k));
            } else if self.punct(j, "{") || self.punct(j, "}") {
                return self.hop(j, end);
            } else {
                j = self.hop(j, end);
            }
        }
        end
    }

    fn method(
        &mut self,
        name_idx: usize,
        end: usize,
        annotations: Vec<String>,
        methods: &mut Vec<MethodDecl>,
    ) -> usize {
        let name = self.ident(name_idx).unwrap_or_default().to_string();
        let location = self.pos(name_idx);
        let mut k = self.hop(name_idx + 1, end);
        while k < end && !self.punct(k, "{") && !self.punct(k, ";") {
            if self.punct(k, "}") {
                break;
            }
            k = self.hop(k, end);
        }
        let mut decl = MethodDecl {
            name,
            annotations,
            body_calls: Vec::new(),
            location,
        };
        if k < end && self.punct(k, "{") {
            let close = self.close_of(k, end);
            let saved = std::mem::take(&mut self.calls);
            self.scan_block(k + 1, close);
            let mut calls = std::mem::replace(&mut self.calls, saved);
            calls.sort_by_key(|c| c.location);
            decl.body_calls = calls;
            methods.push(decl);
            (close + 1).min(end.max(close))
        } else {
            methods.push(decl);
            (k + 1).min(end.max(k))
        }
    }

    fn skip_angles(&self, i: usize, end: usize) -> usize {
        let mut depth = 0usize;
        let mut j = i;
        while j < end {
            match &self.toks[j].kind {
                TokenKind::Punct("<") => depth += 1,
                TokenKind::Punct(">") => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        return j + 1;
                    }
                }
                TokenKind::Punct(";" | "{" | "}" | ")" | "=" | "->") => return i + 1,
                TokenKind::Punct("(") => {
                    j = self.hop(j, end);
                    continue;
                }
                _ => {}
            }
            j += 1;
        }
        i + 1
    }

    // ---- statement scanning --------------------------------------------

    /// Collects every call in `[start, end)` into `self.calls`.
    fn scan_block(&mut self, start: usize, end: usize) {
        if self.depth > MAX_DEPTH {
            return;
        }
        self.depth += 1;
        let mut i = start;
        while i < end {
            let next = self.scan_one(i, end);
            i = next.max(i + 1);
        }
        self.depth -= 1;
    }

    fn scan_one(&mut self, i: usize, end: usize) -> usize {
        let prev_dot = i > 0 && (self.punct(i - 1, ".") || self.punct(i - 1, "::"));
        match &self.toks[i].kind {
            TokenKind::Punct("@") => self.annotation(i, end).1,
            TokenKind::Ident(name) if name == "new" && !prev_dot => {
                let mut p = i;
                let _ = self.postfix_expr(&mut p, end);
                p
            }
            TokenKind::Ident(name) => {
                let name = name.clone();
                let followed_by_paren = self.punct(i + 1, "(");
                if prev_dot {
                    if followed_by_paren && !is_keyword(&name) {
                        // receiver was not a plain chain head, e.g. `(a).b()`
                        let (receiver, recv_start) = self.receiver_before(i - 1);
                        let mut p = i;
                        let call = self.call_at(&mut p, end, Some(receiver), recv_start);
                        let mut e = Expr::MethodCall(Box::new(call));
                        self.postfix_ops(&mut e, recv_start, &mut p, end);
                        return p;
                    }
                    return i + 1;
                }
                if self.punct(i.wrapping_sub(1), "@") || self.kw(i.wrapping_sub(1), "record") {
                    return i + 1;
                }
                let head = (!is_keyword(&name) || name == "this" || name == "super")
                    && (followed_by_paren || self.punct(i + 1, ".") || self.punct(i + 1, "["));
                if !head {
                    return i + 1;
                }
                if followed_by_paren && (name == "this" || name == "super") {
                    return i + 1;
                }
                if followed_by_paren && self.is_local_declaration(i + 1, end) {
                    // method of a local or anonymous class; its body is scanned next
                    return self.hop(i + 1, end);
                }
                let mut p = i;
                let _ = self.postfix_expr(&mut p, end);
                p
            }
            TokenKind::Str(_) if self.punct(i + 1, ".") => {
                let mut p = i;
                let _ = self.postfix_expr(&mut p, end);
                p
            }
            _ => i + 1,
        }
    }

    /// `name(...)` followed by a body or `throws` is a declaration, not a call.
    fn is_local_declaration(&self, open: usize, end: usize) -> bool {
        let after = self.hop(open, end);
        self.punct(after, "{") || self.kw(after, "throws")
    }

    /// Receiver text ending at the `.` at `dot`, walking back over bracket
    /// groups and name segments.
    fn receiver_before(&self, dot: usize) -> (Expr, usize) {
        let mut j = dot;
        loop {
            if j == 0 {
                break;
            }
            let k = j - 1;
            let start = match &self.toks[k].kind {
                TokenKind::Punct(")" | "]") => match self.partner[k] {
                    Some(o) if o < k => o,
                    _ => break,
                },
                TokenKind::Ident(n) if !is_keyword(n) || n == "this" || n == "super" => k,
                TokenKind::Str(_) | TokenKind::Number(_) | TokenKind::Char(_) => k,
                _ => break,
            };
            let mut s = start;
            if self.punct(s, "(") || self.punct(s, "[") {
                if let Some(n) = self.ident(s.wrapping_sub(1)) {
                    if !is_keyword(n) {
                        s -= 1;
                    }
                }
            }
            j = s;
            if s > 0 && (self.punct(s - 1, ".") || self.punct(s - 1, "new")) {
                j = s - 1;
                if self.punct(s - 1, ".") {
                    continue;
                }
            }
            break;
        }
        if self.kw(j.wrapping_sub(1), "new") {
            j -= 1;
        }
        (Expr::Other(self.raw(j, dot)), j)
    }

    // ---- expressions ----------------------------------------------------

    fn enter(&mut self) -> bool {
        if self.depth > MAX_DEPTH {
            return false;
        }
        self.depth += 1;
        true
    }

    /// Consumes the rest of `[*p, end)` as an opaque expression.
    fn bail(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        *p = end.max(start + 1).min(self.toks.len().max(start + 1));
        Expr::Other(self.raw(start, *p))
    }

    fn expr(&mut self, p: &mut usize, end: usize) -> Expr {
        if *p >= end {
            return Expr::Other(String::new());
        }
        if !self.enter() {
            return self.bail(p, end);
        }
        let e = self.expr_inner(p, end);
        self.depth -= 1;
        e
    }

    fn expr_inner(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        // lambdas: `x -> ...` and `(a, b) -> ...`
        let lambda_body = if self.ident(start).is_some() && self.punct(start + 1, "->") {
            Some(start + 2)
        } else if self.punct(start, "(") {
            let close = self.close_of(start, end);
            (close < end && self.punct(close + 1, "->")).then_some(close + 2)
        } else {
            None
        };
        if let Some(body) = lambda_body {
            *p = body;
            if self.punct(body, "{") {
                let close = self.close_of(body, end);
                self.scan_block(body + 1, close);
                *p = (close + 1).min(end.max(close));
            } else {
                let _ = self.expr(p, end);
            }
            return Expr::Other(self.raw(start, *p));
        }

        let cond = self.binary(p, end, 0);
        if self.punct(*p, "?") && *p < end {
            *p += 1;
            let _ = self.expr(p, end);
            if self.punct(*p, ":") && *p < end {
                *p += 1;
                let _ = self.expr(p, end);
            }
            return Expr::Other(self.raw(start, *p));
        }
        if *p < end && self.is_assignment_op(*p) {
            *p += 1;
            let _ = self.expr(p, end);
            return Expr::Other(self.raw(start, *p));
        }
        cond
    }

    fn is_assignment_op(&self, i: usize) -> bool {
        matches!(
            self.toks.get(i).map(|t| &t.kind),
            Some(TokenKind::Punct(
                "=" | "+=" | "-=" | "*=" | "/=" | "&=" | "|=" | "^=" | "%=" | "<<="
            ))
        )
    }

    /// Binary operator at `i`: (precedence, token count, is_plus).
    fn binary_op(&self, i: usize) -> Option<(u8, usize, bool)> {
        let t = self.toks.get(i)?;
        let adjacent = |a: usize| {
            self.toks
                .get(a + 1)
                .is_some_and(|n| n.is_punct(">") && n.span.start == self.toks[a].span.end)
        };
        Some(match &t.kind {
            TokenKind::Punct("||") => (1, 1, false),
            TokenKind::Punct("&&") => (2, 1, false),
            TokenKind::Punct("|") => (3, 1, false),
            TokenKind::Punct("^") => (4, 1, false),
            TokenKind::Punct("&") => (5, 1, false),
            TokenKind::Punct("==" | "!=") => (6, 1, false),
            TokenKind::Punct(">") if adjacent(i) => {
                if adjacent(i + 1) {
                    (8, 3, false)
                } else {
                    (8, 2, false)
                }
            }
            TokenKind::Punct("<" | ">" | "<=" | ">=") => (7, 1, false),
            TokenKind::Ident(k) if k == "instanceof" => (7, 1, false),
            TokenKind::Punct("<<") => (8, 1, false),
            TokenKind::Punct("+") => (9, 1, true),
            TokenKind::Punct("-") => (9, 1, false),
            TokenKind::Punct("*" | "/" | "%") => (10, 1, false),
            _ => return None,
        })
    }

    fn binary(&mut self, p: &mut usize, end: usize, min_prec: u8) -> Expr {
        let start = *p;
        let mut left = self.unary(p, end);
        while *p < end {
            let Some((prec, width, is_plus)) = self.binary_op(*p) else { break };
            if prec <= min_prec {
                break;
            }
            if self.kw(*p, "instanceof") {
                *p += 1;
                self.instanceof_target(p, end);
                left = Expr::Other(self.raw(start, *p));
                continue;
            }
            *p += width;
            if *p >= end {
                left = Expr::Other(self.raw(start, *p));
                break;
            }
            let right = self.binary(p, end, prec);
            left = if is_plus {
                Expr::BinaryConcat(Box::new(left), Box::new(right))
            } else {
                Expr::Other(self.raw(start, *p))
            };
        }
        left
    }

    fn instanceof_target(&mut self, p: &mut usize, end: usize) {
        if self.kw(*p, "final") {
            *p += 1;
        }
        while *p < end && self.ident(*p).is_some() {
            *p += 1;
            if self.punct(*p, ".") {
                *p += 1;
            } else {
                break;
            }
        }
        if self.punct(*p, "<") {
            *p = self.skip_angles(*p, end);
        }
        while self.punct(*p, "[") && self.punct(*p + 1, "]") {
            *p += 2;
        }
        if self.punct(*p, "(") {
            *p = self.hop(*p, end);
        }
        if *p < end && self.ident(*p).is_some_and(|n| !is_keyword(n)) {
            *p += 1;
        }
    }

    fn unary(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        if *p >= end {
            return Expr::Other(String::new());
        }
        if !self.enter() {
            return self.bail(p, end);
        }
        let e = match &self.toks[start].kind {
            TokenKind::Punct("-") if matches!(self.toks.get(start + 1).map(|t| &t.kind), Some(TokenKind::Number(_))) && start + 1 < end => {
                let TokenKind::Number(n) = &self.toks[start + 1].kind else { unreachable!() };
                let lit = Expr::NumericLiteral(format!("-{n}"));
                *p += 2;
                lit
            }
            TokenKind::Punct("+" | "-" | "!" | "~" | "++" | "--") => {
                *p += 1;
                let _ = self.unary(p, end);
                Expr::Other(self.raw(start, *p))
            }
            TokenKind::Punct("(") if self.looks_like_cast(start, end) => {
                *p = self.hop(start, end);
                let _ = self.unary(p, end);
                Expr::Other(self.raw(start, *p))
            }
            _ => self.postfix_expr(p, end),
        };
        self.depth -= 1;
        e
    }

    fn looks_like_cast(&self, open: usize, end: usize) -> bool {
        let close = self.close_of(open, end);
        if close >= end || close == open + 1 {
            return false;
        }
        let inner = &self.toks[open + 1..close];
        let Some(first) = inner[0].ident() else { return false };
        if matches!(first, "true" | "false" | "null" | "this" | "super" | "new") {
            return false;
        }
        let type_like = inner.iter().all(|t| match &t.kind {
            TokenKind::Ident(n) => !matches!(n.as_str(), "instanceof" | "new"),
            TokenKind::Punct(p) => matches!(*p, "." | "<" | ">" | "," | "?" | "[" | "]" | "&"),
            _ => false,
        });
        if !type_like {
            return false;
        }
        let primitive = inner.len() == 1 && PRIMITIVES.contains(&first);
        match self.toks.get(close + 1).map(|t| &t.kind) {
            Some(TokenKind::Ident(n)) => n != "instanceof",
            Some(TokenKind::Str(_) | TokenKind::Char(_) | TokenKind::Number(_)) => true,
            Some(TokenKind::Punct("(" | "!" | "~")) => true,
            Some(TokenKind::Punct("-" | "+" | "++" | "--")) => primitive,
            _ => false,
        }
    }

    fn postfix_expr(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        let mut e = self.primary(p, end);
        self.postfix_ops(&mut e, start, p, end);
        e
    }

    fn postfix_ops(&mut self, e: &mut Expr, start: usize, p: &mut usize, end: usize) {
        while *p < end {
            if self.punct(*p, ".") {
                let dot = *p;
                let mut q = *p + 1;
                if self.punct(q, "<") {
                    q = self.skip_angles(q, end);
                }
                match self.ident(q) {
                    Some("new") => {
                        *p = q;
                        let _ = self.primary(p, end);
                        *e = Expr::Other(self.raw(start, *p));
                    }
                    Some(name) if q < end => {
                        let name = name.to_string();
                        if self.punct(q + 1, "(") && q + 1 < end {
                            let receiver = std::mem::replace(e, Expr::NullLiteral);
                            *p = q;
                            let call = self.call_at(p, end, Some(receiver), start);
                            *e = Expr::MethodCall(Box::new(call));
                        } else {
                            *p = q + 1;
                            *e = match std::mem::replace(e, Expr::NullLiteral) {
                                Expr::Identifier(first) => Expr::FieldAccess(vec![first, name]),
                                Expr::FieldAccess(mut chain) => {
                                    chain.push(name);
                                    Expr::FieldAccess(chain)
                                }
                                _ => Expr::Other(self.raw(start, *p)),
                            };
                        }
                    }
                    _ => {
                        *p = (dot + 1).min(end);
                        *e = Expr::Other(self.raw(start, *p));
                        return;
                    }
                }
            } else if self.punct(*p, "[") {
                let close = self.close_of(*p, end);
                if close > *p + 1 {
                    let mut q = *p + 1;
                    let _ = self.expr(&mut q, close);
                    self.scan_rest(q, close);
                }
                *p = (close + 1).min(end.max(close));
                *e = Expr::Other(self.raw(start, *p));
            } else if self.punct(*p, "::") {
                *p += 1;
                if *p < end {
                    *p += 1;
                }
                *e = Expr::Other(self.raw(start, *p));
            } else if self.punct(*p, "++") || self.punct(*p, "--") {
                *p += 1;
                *e = Expr::Other(self.raw(start, *p));
            } else {
                break;
            }
        }
    }

    /// Parses `name(args)` with `*p` at the name; `raw_start` is where the
    /// receiver chain began.
    fn call_at(&mut self, p: &mut usize, end: usize, receiver: Option<Expr>, raw_start: usize) -> CallExpr {
        let name_idx = *p;
        let name = self.ident(name_idx).unwrap_or_default().to_string();
        let open = name_idx + 1;
        let close = self.close_of(open, end);
        let args = self.arguments(open, close);
        *p = (close + 1).min(end.max(close));
        let call = CallExpr {
            receiver: receiver.map(Box::new),
            name,
            args,
            location: self.pos(name_idx),
            raw: self.raw(raw_start, *p),
        };
        self.calls.push(call.clone());
        call
    }

    fn arguments(&mut self, open: usize, close: usize) -> Vec<Expr> {
        let mut args = Vec::new();
        let mut p = open + 1;
        if p >= close {
            return args;
        }
        loop {
            let arg_start = p;
            let mut e = self.expr(&mut p, close);
            if p < close && !self.punct(p, ",") {
                // unparsed tail: resynchronize on the next top-level comma
                let tail = p;
                while p < close && !self.punct(p, ",") {
                    p = self.hop(p, close);
                }
                self.scan_rest(tail, p);
                e = Expr::Other(self.raw(arg_start, p));
            }
            args.push(e);
            if p < close && self.punct(p, ",") {
                p += 1;
                if p >= close {
                    args.push(Expr::Other(String::new()));
                    break;
                }
            } else {
                break;
            }
        }
        args
    }

    /// Scans a region that was skipped without parsing, so calls inside it
    /// are still recorded.
    fn scan_rest(&mut self, from: usize, to: usize) {
        if from < to {
            self.scan_block(from, to);
        }
    }

    fn primary(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        if start >= end {
            return Expr::Other(String::new());
        }
        match self.toks[start].kind.clone() {
            TokenKind::Number(n) => {
                *p += 1;
                Expr::NumericLiteral(n)
            }
            TokenKind::Str(s) => {
                *p += 1;
                Expr::StringLiteral(s)
            }
            TokenKind::Char(c) => {
                *p += 1;
                Expr::CharLiteral(c)
            }
            TokenKind::Ident(name) => match name.as_str() {
                "true" | "false" => {
                    *p += 1;
                    Expr::BooleanLiteral(name == "true")
                }
                "null" => {
                    *p += 1;
                    Expr::NullLiteral
                }
                "new" => self.creator(p, end),
                "switch" => {
                    *p += 1;
                    for _ in 0..2 {
                        if self.punct(*p, "(") || self.punct(*p, "{") {
                            let close = self.close_of(*p, end);
                            self.scan_rest(*p + 1, close);
                            *p = (close + 1).min(end.max(close));
                        }
                    }
                    Expr::Other(self.raw(start, *p))
                }
                _ if self.punct(start + 1, "(") && (!is_keyword(&name) || name == "this" || name == "super") && start + 1 < end => {
                    let call = self.call_at(p, end, None, start);
                    Expr::MethodCall(Box::new(call))
                }
                _ if !is_keyword(&name) || matches!(name.as_str(), "this" | "super") || PRIMITIVES.contains(&name.as_str()) => {
                    *p += 1;
                    Expr::Identifier(name)
                }
                _ => {
                    *p += 1;
                    Expr::Other(self.raw(start, *p))
                }
            },
            TokenKind::Punct("(") => {
                let close = self.close_of(start, end);
                let mut q = start + 1;
                let inner = self.expr(&mut q, close);
                if q < close {
                    self.scan_rest(q, close);
                }
                *p = (close + 1).min(end.max(close));
                if q < close {
                    Expr::Other(self.raw(start, *p))
                } else {
                    inner
                }
            }
            TokenKind::Punct("{") => {
                let close = self.close_of(start, end);
                self.scan_rest(start + 1, close);
                *p = (close + 1).min(end.max(close));
                Expr::Other(self.raw(start, *p))
            }
            TokenKind::Punct("@") => {
                *p = self.annotation(start, end).1;
                if *p < end {
                    self.unary(p, end)
                } else {
                    Expr::Other(self.raw(start, *p))
                }
            }
            _ => {
                *p += 1;
                Expr::Other(self.raw(start, *p))
            }
        }
    }

    /// `new T(args) { body }` or `new T[n]{...}`.
    fn creator(&mut self, p: &mut usize, end: usize) -> Expr {
        let start = *p;
        *p += 1;
        while self.punct(*p, "@") && *p < end {
            *p = self.annotation(*p, end).1;
        }
        if self.punct(*p, "<") {
            *p = self.skip_angles(*p, end);
        }
        while *p < end && self.ident(*p).is_some() {
            *p += 1;
            if self.punct(*p, "<") {
                *p = self.skip_angles(*p, end);
            }
            if self.punct(*p, ".") {
                *p += 1;
            } else {
                break;
            }
        }
        if self.punct(*p, "(") && *p < end {
            let close = self.close_of(*p, end);
            let _ = self.arguments(*p, close);
            *p = (close + 1).min(end.max(close));
            if self.punct(*p, "{") && *p < end {
                let body_close = self.close_of(*p, end);
                self.scan_rest(*p + 1, body_close);
                *p = (body_close + 1).min(end.max(body_close));
            }
        } else {
            while self.punct(*p, "[") && *p < end {
                let close = self.close_of(*p, end);
                self.scan_rest(*p + 1, close);
                *p = (close + 1).min(end.max(close));
            }
            if self.punct(*p, "{") && *p < end {
                let close = self.close_of(*p, end);
                self.scan_rest(*p + 1, close);
                *p = (close + 1).min(end.max(close));
            }
        }
        if *p == start + 1 && *p < end {
            *p += 1;
        }
        Expr::Other(self.raw(start, *p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> ParseOutput {
        parse_file(&SourceFile::new("T.java", src))
    }

    fn first_call_args(src: &str, name: &str) -> Vec<Expr> {
        let out = parse(&format!("class T {{ void m() {{ {src} }} }}"));
        out.classes[0].methods[0]
            .body_calls
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("no call {name} in {src}"))
            .args
            .clone()
    }

    const LISTING_1: &str = r#"
public class QueryTest {
@Test
public void testQuery() {
 Iterator<QueryKeyResult> results;
 results = getAdminClient().streamingOps.queryKeys(0, testStoreName, queryKeys.iterator());
 assertTrue("Results should not be empty", results.hasNext());
}
}
"#;

    #[test]
    fn listing_one() {
        let out = parse(LISTING_1);
        assert!(out.errors.is_empty(), "{:?}", out.errors);
        assert_eq!(out.classes.len(), 1);
        let m = &out.classes[0].methods[0];
        assert_eq!(m.name, "testQuery");
        assert!(m.has_annotation("Test"));
        let a = m.body_calls.iter().find(|c| c.callee().ends_with("assertTrue")).unwrap();
        assert_eq!(a.args[0], Expr::StringLiteral("Results should not be empty".into()));
        assert!(matches!(&a.args[1], Expr::MethodCall(c) if c.name == "hasNext"));
    }

    #[test]
    fn empty_class() {
        let out = parse("class A {}");
        assert_eq!(out.classes.len(), 1);
        assert_eq!(out.classes[0].name, "A");
        assert!(out.classes[0].methods.is_empty());
    }

    #[test]
    fn concat_and_comparison_args() {
        let args = first_call_args(r#"assertFalse("too big at " + count, count > 100);"#, "assertFalse");
        assert_eq!(
            args,
            vec![
                Expr::BinaryConcat(
                    Box::new(Expr::StringLiteral("too big at ".into())),
                    Box::new(Expr::Identifier("count".into()))
                ),
                Expr::Other("count > 100".into()),
            ]
        );
    }

    #[test]
    fn generic_creator_keeps_argument_count() {
        let args = first_call_args(
            "foo(new HashMap<String, Integer>(), x, Map.<String, Long>of());",
            "foo",
        );
        assert_eq!(args.len(), 3);
        assert_eq!(args[1], Expr::Identifier("x".into()));
    }

    #[test]
    fn listing_two_receiver_is_creator() {
        let args = first_call_args(
            r#"assertTrue("(0,0)", new Range<>(Integer.class, 0, false, 0, false).isEmpty());"#,
            "assertTrue",
        );
        assert_eq!(args.len(), 2);
        let Expr::MethodCall(c) = &args[1] else { panic!("{:?}", args[1]) };
        assert_eq!(c.name, "isEmpty");
        assert!(matches!(c.receiver.as_deref(), Some(Expr::Other(r)) if r.starts_with("new Range")));
    }

    #[test]
    fn field_access_and_numeric_args() {
        let args = first_call_args("assertEquals(r.getLowerBound(), 1.0, EPSILON);", "assertEquals");
        assert!(matches!(&args[0], Expr::MethodCall(c) if c.name == "getLowerBound"
            && c.receiver.as_deref() == Some(&Expr::Identifier("r".into()))));
        assert_eq!(args[1], Expr::NumericLiteral("1.0".into()));
        assert_eq!(args[2], Expr::Identifier("EPSILON".into()));
        let args = first_call_args("assertEquals(BigInteger.ONE, -2, a.b.c);", "assertEquals");
        assert_eq!(args[0], Expr::FieldAccess(vec!["BigInteger".into(), "ONE".into()]));
        assert_eq!(args[1], Expr::NumericLiteral("-2".into()));
        assert_eq!(args[2], Expr::FieldAccess(vec!["a".into(), "b".into(), "c".into()]));
    }

    #[test]
    fn calls_inside_lambdas_and_anonymous_classes() {
        let src = r#"
class T {
  @Test public void m() {
    assertThrows(Foo.class, () -> { assertEquals("inner", 1, f()); });
    Runnable r = new Runnable() {
      @Override public void run() { assertNull("anon", x); }
    };
    list.forEach(x -> assertNotNull(x));
    if (ok) { for (int i = 0; i < 3; i++) { fail("loop"); } }
  }
}"#;
        let out = parse(src);
        let names: Vec<_> = out.classes[0].methods[0].body_calls.iter().map(|c| c.name.as_str()).collect();
        for want in ["assertThrows", "assertEquals", "f", "assertNull", "forEach", "assertNotNull", "fail"] {
            assert!(names.contains(&want), "missing {want} in {names:?}");
        }
        assert!(!names.contains(&"run"));
        assert_eq!(names.iter().filter(|n| **n == "assertEquals").count(), 1);
    }

    #[test]
    fn chained_calls_are_nested_not_flattened() {
        let out = parse("class T { void m() { Assertions.assertThat(x).isEqualTo(y); } }");
        let calls = &out.classes[0].methods[0].body_calls;
        assert_eq!(calls.len(), 2);
        assert_eq!(calls[0].name, "assertThat");
        assert_eq!(calls[0].qualifier(), Some(vec!["Assertions"]));
        assert_eq!(calls[1].name, "isEqualTo");
        assert!(matches!(calls[1].receiver.as_deref(), Some(Expr::MethodCall(_))));
    }

    #[test]
    fn nested_classes_and_imports() {
        let src = r#"
package a.b;
import org.junit.Test;
import static org.junit.Assert.*;
@RunWith(Suite.class)
public class Outer extends TestCase {
  private int x = compute();
  static class Inner { @Test void t() { assertTrue(true); } }
  enum E { A, B; void e() {} }
}"#;
        let out = parse(src);
        let names: Vec<_> = out.classes.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Outer", "Inner", "E"]);
        assert_eq!(out.classes[0].imports, ["org.junit.Test", "org.junit.Assert.*"]);
        assert_eq!(out.classes[0].superclass.as_deref(), Some("TestCase"));
        assert!(out.classes[0].has_annotation("RunWith"));
        assert_eq!(out.classes[1].methods[0].body_calls.len(), 1);
        assert_eq!(out.classes[2].methods[0].name, "e");
    }

    #[test]
    fn call_location_points_at_name() {
        let src = "class T { void m() {\n    Assert.assertTrue(\"m\", ok);\n} }";
        let file = SourceFile::new("T.java", src);
        let out = parse_file(&file);
        let call = &out.classes[0].methods[0].body_calls[0];
        assert_eq!(call.location, Position { line: 2, column: 12 });
        assert_eq!(call.callee(), "Assert.assertTrue");
    }

    #[test]
    fn unbalanced_file_keeps_earlier_classes() {
        let out = parse("class A { void a() { f(); } }\nclass B { void b() { g(; }");
        assert!(out.partial);
        assert!(!out.errors.is_empty());
        assert_eq!(out.classes[0].name, "A");
        assert_eq!(out.classes[0].methods[0].body_calls[0].name, "f");
    }

    #[test]
    fn casts_ternaries_and_parens() {
        let args = first_call_args(r#"check((String) o, a ? b : c, ("x" + y), (int) -1);"#, "check");
        assert_eq!(args.len(), 4);
        assert!(matches!(args[0], Expr::Other(_)));
        assert!(matches!(args[1], Expr::Other(_)));
        assert!(matches!(args[2], Expr::BinaryConcat(_, _)));
    }

    #[test]
    fn complex_receiver_call_is_found() {
        let out = parse("class T { void m() { ((Foo) x).bar(1); } }");
        let calls = &out.classes[0].methods[0].body_calls;
        assert_eq!(calls.len(), 1);
        assert_eq!(calls[0].name, "bar");
        assert_eq!(calls[0].callee(), "((Foo) x).bar");
    }

    #[test]
    fn text_block_argument() {
        let args = first_call_args("assertEquals(\"\"\"\n    hi\n    \"\"\", s, t);", "assertEquals");
        assert_eq!(args[0], Expr::StringLiteral("hi\n".into()));
    }
}
