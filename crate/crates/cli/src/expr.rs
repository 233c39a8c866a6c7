//! The operator language: sums, products, powers and commutators of named
//! operators and rational scalars.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' UINT)*
//! atom   := RATIONAL | NAME ['@' ['-'] RATIONAL] | '(' expr ')' | '[' expr ',' expr ']'
//! ```

use std::fmt;

use krein_osc::oned::{build_op_1d, commutator_1d, compose_1d, DiffOp1D, Op1DName};
use krein_osc::rat::{self, Rational};
use krein_osc::scalar::GradedScalar;
use krein_osc::twod::{build_op_2d, commutator_2d, compose_2d, DiffOp2D, Op2DName};
use num_traits::Signed;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    OneD,
    TwoD,
}

impl std::str::FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1d" => Ok(Space::OneD),
            "2d" => Ok(Space::TwoD),
            other => Err(format!("space must be 1d or 2d, got {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown operator `{name}` at byte {offset}")]
    UnknownName { offset: usize, name: String },
    #[error("arity error at byte {offset}: {message}")]
    Arity { offset: usize, message: String },
}

impl ExprError {
    pub fn code(&self) -> &'static str {
        match self {
            ExprError::Syntax { .. } => "SyntaxError",
            ExprError::UnknownName { .. } => "UnknownName",
            ExprError::Arity { .. } => "ArityError",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Name { name: String, alpha: Option<Rational> },
    Scalar(Rational),
    Neg(Box<OpExpr>),
    Add(Box<OpExpr>, Box<OpExpr>),
    Sub(Box<OpExpr>, Box<OpExpr>),
    Mul(Box<OpExpr>, Box<OpExpr>),
    Pow(Box<OpExpr>, u32),
    Commutator(Box<OpExpr>, Box<OpExpr>),
}

const NAMES_1D: [&str; 7] = ["H1", "a+", "a-", "A+", "A-", "x", "D"];
const NAMES_2D: [&str; 10] = ["H", "Q", "b++", "b+-", "b-+", "b--", "z", "zbar", "dz", "dzbar"];

fn takes_alpha(name: &str) -> bool {
    name == "a+" || name == "a-"
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    At,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let q = rat::parse_rational(&text[start..i]).map_err(|e| ExprError::Syntax { offset: start, message: e.to_string() })?;
            out.push((Tok::Num(q), start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            // Sign suffixes belong to the name: b takes two, a and A take one.
            let signs = match &text[start..i] {
                "b" => 2,
                "a" | "A" => 1,
                _ => 0,
            };
            for _ in 0..signs {
                if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                    i += 1;
                } else {
                    return Err(ExprError::UnknownName { offset: start, name: text[start..i].to_string() });
                }
            }
            out.push((Tok::Name(text[start..i].to_string()), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '@' => Tok::At,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(ExprError::Syntax { offset: start, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Name(_) => "name",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::At => "`@`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::LBracket => "`[`",
        Tok::RBracket => "`]`",
        Tok::Comma => "`,`",
        Tok::End => "end of input",
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    space: Space,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) {
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<OpExpr, ExprError> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                OpExpr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OpExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OpExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Name(_) | Tok::LParen | Tok::LBracket)
    }

    fn term(&mut self) -> Result<OpExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.starts_factor() {
                lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<OpExpr, ExprError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.peek().clone() {
                Tok::Num(q) if rat::is_integer(&q) => {
                    self.bump();
                    let n = rat::to_i64(&q)
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or(ExprError::Syntax { offset: at, message: "exponent too large".into() })?;
                    base = OpExpr::Pow(Box::new(base), n);
                }
                _ => return Err(ExprError::Syntax { offset: at, message: "expected a non-negative integer exponent".into() }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OpExpr, ExprError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(OpExpr::Scalar(q))
            }
            Tok::Name(name) => {
                self.bump();
                self.name(name, at)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RBracket => {
                        return Err(ExprError::Arity { offset: at, message: "commutator needs two arguments, got one".into() })
                    }
                    _ => return self.syntax("expected `,` in commutator"),
                }
                let b = self.expr()?;
                match self.peek() {
                    Tok::RBracket => {
                        self.bump();
                        Ok(OpExpr::Commutator(Box::new(a), Box::new(b)))
                    }
                    Tok::Comma => Err(ExprError::Arity { offset: at, message: "commutator takes exactly two arguments".into() }),
                    _ => self.syntax("expected `]`"),
                }
            }
            Tok::End => self.syntax("unexpected end of input"),
            other => self.syntax(format!("unexpected {}", describe(&other))),
        }
    }

    fn name(&mut self, name: String, at: usize) -> Result<OpExpr, ExprError> {
        let vocabulary: &[&str] = match self.space {
            Space::OneD => &NAMES_1D,
            Space::TwoD => &NAMES_2D,
        };
        if !vocabulary.contains(&name.as_str()) {
            return Err(ExprError::UnknownName { offset: at, name });
        }
        let alpha = if *self.peek() == Tok::At {
            if !takes_alpha(&name) {
                return Err(ExprError::Arity { offset: at, message: format!("`{name}` takes no parameter") });
            }
            self.bump();
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            match self.peek().clone() {
                Tok::Num(q) => {
                    self.bump();
                    Some(if negative { -q } else { q })
                }
                _ => return self.syntax("expected a rational parameter after `@`"),
            }
        } else {
            None
        };
        if takes_alpha(&name) && alpha.is_none() {
            return Err(ExprError::Arity { offset: at, message: format!("`{name}` needs a parameter, e.g. {name}@1") });
        }
        Ok(OpExpr::Name { name, alpha })
    }
}

pub fn parse_operator_expr(text: &str, space: Space) -> Result<OpExpr, ExprError> {
    if text.trim().is_empty() {
        return Err(ExprError::Syntax { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks: lex(text)?, pos: 0, space };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

impl OpExpr {
    /// Binding level: 0 sum, 1 product, 2 power, 3 atom.
    fn level(&self) -> u8 {
        match self {
            OpExpr::Neg(_) | OpExpr::Add(..) | OpExpr::Sub(..) => 0,
            OpExpr::Mul(..) => 1,
            OpExpr::Pow(..) => 2,
            OpExpr::Name { .. } | OpExpr::Scalar(_) | OpExpr::Commutator(..) => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            OpExpr::Name { name, alpha: None } => write!(f, "{name}"),
            OpExpr::Name { name, alpha: Some(a) } => write!(f, "{name}@{a}"),
            OpExpr::Scalar(q) if q.is_negative() => write!(f, "(-{})", -q),
            OpExpr::Scalar(q) => write!(f, "{q}"),
            OpExpr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 1)
            }
            OpExpr::Add(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " + ")?;
                b.write_at(f, 1)
            }
            OpExpr::Sub(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " - ")?;
                b.write_at(f, 1)
            }
            OpExpr::Mul(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " * ")?;
                b.write_at(f, 2)
            }
            OpExpr::Pow(b, n) => {
                b.write_at(f, 2)?;
                write!(f, "^{n}")
            }
            OpExpr::Commutator(a, b) => {
                write!(f, "[")?;
                a.write_at(f, 0)?;
                write!(f, ", ")?;
                b.write_at(f, 0)?;
                write!(f, "]")
            }
        }
    }

    /// Total degree in named operators, counting powers.
    pub fn degree(&self) -> u32 {
        match self {
            OpExpr::Name { .. } => 1,
            OpExpr::Scalar(_) => 0,
            OpExpr::Neg(e) => e.degree(),
            OpExpr::Add(a, b) | OpExpr::Sub(a, b) => a.degree().max(b.degree()),
            OpExpr::Mul(a, b) | OpExpr::Commutator(a, b) => a.degree() + b.degree(),
            OpExpr::Pow(b, n) => b.degree() * n,
        }
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

fn name_1d(name: &str) -> Op1DName {
    match name {
        "H1" => Op1DName::H1,
        "a+" => Op1DName::APlus,
        "a-" => Op1DName::AMinus,
        "A+" => Op1DName::LadderUp,
        "A-" => Op1DName::LadderDown,
        "x" => Op1DName::X,
        _ => Op1DName::D,
    }
}

/// Evaluates a parsed 1d expression to a normal-ordered operator.
pub fn eval_1d(e: &OpExpr) -> krein_osc::Result<DiffOp1D> {
    Ok(match e {
        OpExpr::Name { name, alpha } => build_op_1d(name_1d(name), alpha.as_ref())?,
        OpExpr::Scalar(q) => DiffOp1D::scalar(GradedScalar::from_rational(q.clone())),
        OpExpr::Neg(a) => eval_1d(a)?.scale(&GradedScalar::from_int(-1)),
        OpExpr::Add(a, b) => eval_1d(a)?.add(&eval_1d(b)?),
        OpExpr::Sub(a, b) => eval_1d(a)?.sub(&eval_1d(b)?),
        OpExpr::Mul(a, b) => compose_1d(&eval_1d(a)?, &eval_1d(b)?),
        OpExpr::Pow(a, n) => eval_1d(a)?.pow(*n),
        OpExpr::Commutator(a, b) => commutator_1d(&eval_1d(a)?, &eval_1d(b)?),
    })
}

/// Evaluates a parsed 2d expression to a normal-ordered operator.
pub fn eval_2d(e: &OpExpr) -> krein_osc::Result<DiffOp2D> {
    Ok(match e {
        OpExpr::Name { name, .. } => build_op_2d(name.parse::<Op2DName>()?),
        OpExpr::Scalar(q) => DiffOp2D::scalar(GradedScalar::from_rational(q.clone())),
        OpExpr::Neg(a) => eval_2d(a)?.scale(&GradedScalar::from_int(-1)),
        OpExpr::Add(a, b) => eval_2d(a)?.add(&eval_2d(b)?),
        OpExpr::Sub(a, b) => eval_2d(a)?.sub(&eval_2d(b)?),
        OpExpr::Mul(a, b) => compose_2d(&eval_2d(a)?, &eval_2d(b)?),
        OpExpr::Pow(a, n) => eval_2d(a)?.pow(*n),
        OpExpr::Commutator(a, b) => commutator_2d(&eval_2d(a)?, &eval_2d(b)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use krein_osc::rat::int;

    fn p2(s: &str) -> OpExpr {
        parse_operator_expr(s, Space::TwoD).unwrap()
    }

    fn name(n: &str) -> Box<OpExpr> {
        Box::new(OpExpr::Name { name: n.into(), alpha: None })
    }

    #[test]
    fn commutator_ast() {
        assert_eq!(p2("[Q, H]"), OpExpr::Commutator(name("Q"), name("H")));
    }

    #[test]
    fn power_binds_tighter_than_juxtaposition() {
        let e = p2("b++^2 * b--");
        assert_eq!(e, OpExpr::Mul(Box::new(OpExpr::Pow(name("b++"), 2)), name("b--")));
        assert_eq!(e.degree(), 3);
        assert_eq!(p2("b++^2 b--"), e);
    }

    #[test]
    fn alpha_suffix() {
        let e = parse_operator_expr("a+@-2 a+@2", Space::OneD).unwrap();
        let a = |q: i64| Box::new(OpExpr::Name { name: "a+".into(), alpha: Some(int(q)) });
        assert_eq!(e, OpExpr::Mul(a(-2), a(2)));
    }

    #[test]
    fn signs_next_to_names() {
        assert_eq!(p2("b++ + b--"), OpExpr::Add(name("b++"), name("b--")));
        assert_eq!(p2("b+-b-+"), OpExpr::Mul(name("b+-"), name("b-+")));
        assert_eq!(p2("-H"), OpExpr::Neg(name("H")));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_operator_expr("b++ +", Space::TwoD), Err(ExprError::Syntax { offset: 5, .. })));
        assert!(matches!(parse_operator_expr("H1", Space::TwoD), Err(ExprError::UnknownName { offset: 0, .. })));
        assert!(matches!(parse_operator_expr("x + b", Space::OneD), Err(ExprError::UnknownName { offset: 4, .. })));
        assert!(matches!(parse_operator_expr("[H]", Space::TwoD), Err(ExprError::Arity { .. })));
        assert!(matches!(parse_operator_expr("[H, Q, H]", Space::TwoD), Err(ExprError::Arity { .. })));
        assert!(matches!(parse_operator_expr("a+ x", Space::OneD), Err(ExprError::Arity { .. })));
        assert!(matches!(parse_operator_expr("x@2", Space::OneD), Err(ExprError::Arity { .. })));
        assert!(matches!(parse_operator_expr("H ^ -1", Space::TwoD), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(parse_operator_expr("(H", Space::TwoD), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_operator_expr("H $", Space::TwoD), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_operator_expr("  ", Space::TwoD), Err(ExprError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn printing_reparses() {
        for s in ["-b++ + 2 b-- - [H, Q]", "(b++ + b--)^3 * 1/2", "b++^2^3", "[a+@-1/2 x, D] - (x - D)", "A+ (A- + 3)"] {
            let space = if s.contains('b') || s.contains('H') { Space::TwoD } else { Space::OneD };
            let e = parse_operator_expr(s, space).unwrap();
            assert_eq!(parse_operator_expr(&e.to_string(), space).unwrap(), e, "{s} -> {e}");
        }
    }

    #[test]
    fn evaluation_matches_builders() {
        let e = parse_operator_expr("a+@-2 a+@2", Space::OneD).unwrap();
        assert_eq!(eval_1d(&e).unwrap(), build_op_1d(Op1DName::LadderUp, None).unwrap());
        assert!(eval_2d(&p2("[Q, H]")).unwrap().is_zero());
        assert_eq!(eval_2d(&p2("[b-+, b++]")).unwrap(), DiffOp2D::identity());
    }
}
