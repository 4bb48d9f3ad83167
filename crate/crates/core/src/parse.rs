//! Polynomial expressions: `+ - * ^`, parentheses, integer and `p/q`
//! literals, named variables.
//!
//! Precedence, tightest first: `^` (non-negative integer exponent), unary
//! `-`, `*`, binary `+`/`-`. A literal `p/q` is a single token, so
//! `1/2*x` is `(1/2)·x`. Decimal literals are rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::{Poly, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: {message}")]
    BadLiteral { pos: Pos, message: String },
    #[error("{pos}: unknown variable `{name}`")]
    UnknownVariable { pos: Pos, name: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::BadLiteral { pos, .. }
            | ParseError::UnknownVariable { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Var { name: String, pos: Pos },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates in the polynomial ring over `vars`.
    pub fn to_poly(&self, vars: &[&str]) -> Result<Poly, ParseError> {
        let n = vars.len();
        Ok(match self {
            Expr::Num(r) => Poly::constant(n, r.clone()),
            Expr::Var { name, pos } => match vars.iter().position(|v| v == name) {
                Some(i) => Poly::var(n, i),
                None => {
                    return Err(ParseError::UnknownVariable {
                        pos: *pos,
                        name: name.clone(),
                    })
                }
            },
            Expr::Neg(a) => -a.to_poly(vars)?,
            Expr::Add(a, b) => a.to_poly(vars)? + b.to_poly(vars)?,
            Expr::Sub(a, b) => a.to_poly(vars)? - b.to_poly(vars)?,
            Expr::Mul(a, b) => a.to_poly(vars)? * b.to_poly(vars)?,
            Expr::Pow(a, e) => a.to_poly(vars)?.pow(*e),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number `{}`", crate::exactalg::fmt_rat(r)),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError::BadLiteral {
                    pos,
                    message: "decimal literals are not supported; write p/q".into(),
                });
            }
            let mut value = Rat::from_integer(num);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[ds..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(ParseError::BadLiteral {
                        pos,
                        message: "zero denominator".into(),
                    });
                }
                value /= Rat::from_integer(den);
            }
            Tok::Num(value)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        expected: vec!["an expression".into()],
                        found: format!("`{c}`"),
                    })
                }
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                self.bump();
                let e = r.to_integer().to_u32().ok_or(ParseError::BadLiteral {
                    pos,
                    message: "exponent too large".into(),
                })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.error(&["a non-negative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::Ident(name) => {
                let (_, pos) = self.bump();
                Ok(Expr::Var { name, pos })
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "an operator"]));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.error(&["a number", "a variable", "`(`", "`-`"])),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["an operator", "end of input"]));
    }
    Ok(e)
}

pub fn parse_poly(src: &str, vars: &[&str]) -> Result<Poly, ParseError> {
    parse_expr(src)?.to_poly(vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    const XY: &[&str] = &["x", "y"];

    fn p(s: &str) -> Poly {
        parse_poly(s, XY).unwrap()
    }

    #[test]
    fn spec_examples() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(p("x^4 + y^4"), x.pow(4) + y.pow(4));
        assert_eq!(p("1/2*x - x"), x.scale(&rat_frac(-1, 2)));
        let err = parse_poly("x + ", XY).unwrap_err();
        assert_eq!(err.pos(), Pos { line: 1, column: 5 });
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn precedence() {
        let three = ["x", "y", "z"];
        let q = |s| parse_poly(s, &three).unwrap();
        assert_eq!(q("x - y - z"), q("(x - y) - z"));
        assert_eq!(q("x^2*y^3"), q("(x^2)*(y^3)"));
        assert_eq!(q("-x^2"), -q("x^2"));
        assert_eq!(q("-2^2"), Poly::constant(3, rat(-4)));
        assert_eq!(q("2*-x"), q("-2*x"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x + w", XY).unwrap_err();
        assert_eq!(
            e,
            ParseError::UnknownVariable {
                pos: Pos { line: 1, column: 5 },
                name: "w".into()
            }
        );
        let e = parse_poly("x +\n  1.5", XY).unwrap_err();
        assert_eq!(e.pos(), Pos { line: 2, column: 3 });
        let e = parse_poly("(x + y", XY).unwrap_err();
        assert_eq!(e.pos(), Pos { line: 1, column: 7 });
        assert!(parse_poly("x^y", XY).is_err());
        assert!(parse_poly("x^-1", XY).is_err());
        assert!(parse_poly("2x", XY).is_err());
        assert!(parse_poly("x / 2", XY).is_err());
        assert!(parse_poly("1/0", XY).is_err());
        assert!(parse_poly("", XY).is_err());
    }

    #[test]
    fn renders_reparse() {
        for s in ["2*x*y^2 - 1/2*x - 3", "-(x - y)^3", "0", "x^10 - 7/3"] {
            let a = p(s);
            assert_eq!(p(&a.render(XY)), a);
        }
    }
}
