//! Syntax tree for the subset of Java the analysis needs.

use serde::{Deserialize, Serialize};

use crate::source::Position;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDecl {
    pub name: String,
    /// Annotation names as written, e.g. `RunWith` or `org.junit.Test`.
    pub annotations: Vec<String>,
    /// File-level imports, shared by every class of the file.
    pub imports: Vec<String>,
    /// Name after `extends`, if any.
    pub superclass: Option<String>,
    pub methods: Vec<MethodDecl>,
    pub location: Position,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodDecl {
    pub name: String,
    pub annotations: Vec<String>,
    /// Every call in the body, nested ones included, in source order.
    pub body_calls: Vec<CallExpr>,
    pub location: Position,
}

impl MethodDecl {
    pub fn has_annotation(&self, simple_name: &str) -> bool {
        self.annotations.iter().any(|a| simple(a) == simple_name)
    }
}

impl ClassDecl {
    pub fn has_annotation(&self, simple_name: &str) -> bool {
        self.annotations.iter().any(|a| simple(a) == simple_name)
    }
}

fn simple(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CallExpr {
    /// What the method is invoked on; `None` for an unqualified call.
    pub receiver: Option<Box<Expr>>,
    pub name: String,
    pub args: Vec<Expr>,
    /// Position of the method-name token that precedes `(`.
    pub location: Position,
    /// Source text of the whole call.
    pub raw: String,
}

impl CallExpr {
    /// Dotted callee as written, e.g. `Assert.assertTrue`. Complex receivers
    /// contribute their raw text.
    pub fn callee(&self) -> String {
        match self.receiver.as_deref() {
            None => self.name.clone(),
            Some(r) => format!("{}.{}", r.source_text(), self.name),
        }
    }

    /// The receiver as a plain dotted name path, when it is one.
    pub fn qualifier(&self) -> Option<Vec<&str>> {
        match self.receiver.as_deref() {
            None => Some(Vec::new()),
            Some(Expr::Identifier(n)) => Some(vec![n.as_str()]),
            Some(Expr::FieldAccess(chain)) => Some(chain.iter().map(String::as_str).collect()),
            Some(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum Expr {
    /// Decoded literal text.
    StringLiteral(String),
    CharLiteral(String),
    /// Raw literal text; a leading minus sign is folded in.
    NumericLiteral(String),
    BooleanLiteral(bool),
    NullLiteral,
    Identifier(String),
    /// A dotted name path such as `obj.name` or `BigInteger.ONE`.
    FieldAccess(Vec<String>),
    MethodCall(Box<CallExpr>),
    /// Only produced for `+`.
    BinaryConcat(Box<Expr>, Box<Expr>),
    /// Anything else, kept as raw source text.
    Other(String),
}

impl Expr {
    /// Java-ish rendering of the expression.
    pub fn source_text(&self) -> String {
        match self {
            Expr::StringLiteral(s) => format!("{s:?}"),
            Expr::CharLiteral(c) => format!("'{c}'"),
            Expr::NumericLiteral(n) => n.clone(),
            Expr::BooleanLiteral(b) => b.to_string(),
            Expr::NullLiteral => "null".to_string(),
            Expr::Identifier(n) => n.clone(),
            Expr::FieldAccess(chain) => chain.join("."),
            Expr::MethodCall(call) => call.raw.clone(),
            Expr::BinaryConcat(l, r) => format!("{} + {}", l.source_text(), r.source_text()),
            Expr::Other(raw) => raw.clone(),
        }
    }

    pub fn is_numeric_literal(&self) -> bool {
        matches!(self, Expr::NumericLiteral(_))
    }
}

/// Flattens nested `+` nodes left to right. Non-concatenations come back as
/// a single part.
pub fn extract_concat_tree(expr: &Expr) -> Vec<Expr> {
    let mut parts = Vec::new();
    let mut stack = vec![expr];
    while let Some(e) = stack.pop() {
        match e {
            Expr::BinaryConcat(l, r) => {
                stack.push(r);
                stack.push(l);
            }
            leaf => parts.push(leaf.clone()),
        }
    }
    parts
}
