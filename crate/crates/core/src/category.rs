//! Message composition taxonomy: Text, Identifier, Combination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::Expr;
use crate::junit::MessageExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TopCategory {
    Text,
    Identifier,
    Combination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SubCategory {
    Method,
    Variable,
    StringPlusVariable,
    StringPlusMethod,
    StringPlusVariablePlusMethod,
    StringPlusDigit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MessageCategory {
    pub top: TopCategory,
    pub sub: Option<SubCategory>,
    /// A char literal took part in the message.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub has_char_literal: bool,
}

impl TopCategory {
    pub const ALL: [TopCategory; 3] = [TopCategory::Text, TopCategory::Combination, TopCategory::Identifier];

    pub fn label(self) -> &'static str {
        match self {
            TopCategory::Text => "Text",
            TopCategory::Identifier => "Identifier",
            TopCategory::Combination => "Combination",
        }
    }
}

impl SubCategory {
    pub fn label(self) -> &'static str {
        match self {
            SubCategory::Method => "Method",
            SubCategory::Variable => "Variable",
            SubCategory::StringPlusVariable => "String + Variable",
            SubCategory::StringPlusMethod => "String + Method",
            SubCategory::StringPlusVariablePlusMethod => "String + Variable + Method",
            SubCategory::StringPlusDigit => "String + Digit",
        }
    }
}

impl fmt::Display for MessageCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.top.label())?;
        if let Some(sub) = self.sub {
            write!(f, "/{}", sub.label())?;
        }
        Ok(())
    }
}

/// Why a message fell outside the taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unclassifiable {
    pub reason: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PartKind {
    Text,
    Char,
    Variable,
    Method,
    Digit,
    Other,
}

fn kind(part: &Expr) -> PartKind {
    match part {
        Expr::StringLiteral(_) => PartKind::Text,
        Expr::CharLiteral(_) => PartKind::Char,
        Expr::Identifier(_) | Expr::FieldAccess(_) => PartKind::Variable,
        Expr::MethodCall(_) => PartKind::Method,
        Expr::NumericLiteral(_) => PartKind::Digit,
        Expr::BooleanLiteral(_) | Expr::NullLiteral | Expr::Other(_) | Expr::BinaryConcat(..) => {
            PartKind::Other
        }
    }
}

pub fn categorize(message: &MessageExpr) -> Result<MessageCategory, Unclassifiable> {
    categorize_parts(&message.parts)
}

pub fn categorize_parts(parts: &[Expr]) -> Result<MessageCategory, Unclassifiable> {
    if parts.is_empty() {
        return Err(Unclassifiable { reason: "empty message".into() });
    }
    let kinds: Vec<PartKind> = parts.iter().map(kind).collect();
    let has = |k: PartKind| kinds.contains(&k);
    let has_char_literal = has(PartKind::Char);
    let stringy = |k: &PartKind| matches!(k, PartKind::Text | PartKind::Char);
    let any_string = kinds.iter().any(stringy);
    let (top, sub) = if kinds.iter().all(stringy) {
        (TopCategory::Text, None)
    } else if any_string {
        let variable = has(PartKind::Variable);
        let method = has(PartKind::Method);
        let digits_only = kinds.iter().filter(|k| !stringy(k)).all(|k| *k == PartKind::Digit);
        let sub = if variable && method {
            SubCategory::StringPlusVariablePlusMethod
        } else if method {
            SubCategory::StringPlusMethod
        } else if digits_only {
            SubCategory::StringPlusDigit
        } else {
            SubCategory::StringPlusVariable
        };
        (TopCategory::Combination, Some(sub))
    } else if kinds.iter().all(|k| matches!(k, PartKind::Variable | PartKind::Method)) {
        let sub = if has(PartKind::Method) {
            SubCategory::Method
        } else {
            SubCategory::Variable
        };
        (TopCategory::Identifier, Some(sub))
    } else {
        let reason = if kinds.iter().all(|k| *k == PartKind::Digit) {
            "numeric literal without text"
        } else {
            "expression is neither text nor identifier"
        };
        return Err(Unclassifiable { reason: reason.into() });
    };
    Ok(MessageCategory { top, sub, has_char_literal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::CallExpr;
    use crate::source::Position;

    fn s(v: &str) -> Expr {
        Expr::StringLiteral(v.into())
    }
    fn id(v: &str) -> Expr {
        Expr::Identifier(v.into())
    }
    fn call(name: &str) -> Expr {
        Expr::MethodCall(Box::new(CallExpr {
            receiver: Some(Box::new(id("r"))),
            name: name.into(),
            args: vec![],
            location: Position::default(),
            raw: format!("r.{name}()"),
        }))
    }
    fn cat(parts: &[Expr]) -> (TopCategory, Option<SubCategory>) {
        let c = categorize_parts(parts).unwrap();
        (c.top, c.sub)
    }

    #[test]
    fn category_examples() {
        assert_eq!(cat(&[s("interpolate")]), (TopCategory::Text, None));
        assert_eq!(cat(&[call("getLowerBound")]), (TopCategory::Identifier, Some(SubCategory::Method)));
        assert_eq!(
            cat(&[s("too big at "), id("count")]),
            (TopCategory::Combination, Some(SubCategory::StringPlusVariable))
        );
        assert_eq!(
            cat(&[s("Incorrect id: "), id("actual")]),
            (TopCategory::Combination, Some(SubCategory::StringPlusVariable))
        );
        assert_eq!(cat(&[id("msg")]), (TopCategory::Identifier, Some(SubCategory::Variable)));
    }

    #[test]
    fn combination_subkinds() {
        assert_eq!(
            cat(&[s("a"), id("x"), call("m")]).1,
            Some(SubCategory::StringPlusVariablePlusMethod)
        );
        assert_eq!(cat(&[s("a"), call("m")]).1, Some(SubCategory::StringPlusMethod));
        assert_eq!(cat(&[s("row "), Expr::NumericLiteral("3".into())]).1, Some(SubCategory::StringPlusDigit));
        assert_eq!(
            cat(&[s("a"), Expr::FieldAccess(vec!["o".into(), "name".into()])]).1,
            Some(SubCategory::StringPlusVariable)
        );
        assert_eq!(cat(&[s("a"), Expr::NullLiteral]).1, Some(SubCategory::StringPlusVariable));
    }

    #[test]
    fn char_literals_are_text_but_flagged() {
        let c = categorize_parts(&[Expr::CharLiteral("x".into())]).unwrap();
        assert_eq!(c.top, TopCategory::Text);
        assert!(c.has_char_literal);
        assert!(!categorize_parts(&[s("x")]).unwrap().has_char_literal);
    }

    #[test]
    fn unclassifiable() {
        assert!(categorize_parts(&[Expr::NumericLiteral("42".into())]).is_err());
        assert!(categorize_parts(&[Expr::Other("a ? b : c".into())]).is_err());
        assert!(categorize_parts(&[id("x"), Expr::NullLiteral]).is_err());
        assert!(categorize_parts(&[]).is_err());
    }
}
