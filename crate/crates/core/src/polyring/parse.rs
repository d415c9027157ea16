//! Expression grammar shared by polynomials, rational expressions and the
//! form/multivector syntax.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' (integer | atom))*
//! atom    := integer | ident | 'd' '(' ident ')' | 'e' '(' ident ')' | '(' sum ')'
//! ```
//!
//! `x ^ 3` is a power; `a ^ b` with a non-integer right operand is a wedge.

use num_bigint::BigInt;

use super::chart::ChartRef;
use super::polynomial::{Polynomial, Rational};
use super::ratexpr::RationalExpr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String, Pos),
    /// `d(x)`: coordinate differential.
    Differential(String, Pos),
    /// `e(x)`: coordinate vector field.
    Vector(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
    Wedge(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax { line: pos.line, column: pos.column, message: message.into() }
}

fn lex(text: &str, origin: Pos) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = origin.line;
    let mut column = origin.column;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            toks.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), pos));
            column += 1;
            i += 1;
            continue;
        }
        return Err(syntax(pos, format!("unexpected character `{c}`")));
    }
    Ok(Lexer { toks, end: Pos { line, column } })
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{op}`")))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while self.eat('^') {
            let pos = self.pos();
            if let Some(Tok::Int(n)) = self.peek() {
                let n = u32::try_from(n.clone())
                    .map_err(|_| syntax(pos, "exponent too large"))?;
                self.at += 1;
                lhs = Expr::Pow(Box::new(lhs), n);
            } else {
                lhs = Expr::Wedge(Box::new(lhs), Box::new(self.atom()?));
            }
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            None => Err(syntax(pos, "unexpected end of input")),
            Some((Tok::Int(n), _)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some((Tok::Ident(name), _)) => {
                self.at += 1;
                if (name == "d" || name == "e") && self.peek() == Some(&Tok::Op('(')) {
                    self.at += 1;
                    let arg_pos = self.pos();
                    let arg = match self.toks.get(self.at).cloned() {
                        Some((Tok::Ident(a), _)) => a,
                        _ => return Err(syntax(arg_pos, "expected a coordinate name")),
                    };
                    self.at += 1;
                    self.expect(')')?;
                    Ok(if name == "d" {
                        Expr::Differential(arg, arg_pos)
                    } else {
                        Expr::Vector(arg, arg_pos)
                    })
                } else {
                    Ok(Expr::Ident(name, pos))
                }
            }
            Some((Tok::Op('('), _)) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some((Tok::Op(c), _)) => Err(syntax(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parse text into an expression tree. `origin` is the position of the
/// first character, so embedded expressions report file coordinates.
pub fn parse_ast_at(text: &str, origin: Pos) -> Result<Expr> {
    let Lexer { toks, end } = lex(text, origin)?;
    let mut p = Parser { toks, at: 0, end };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_ast(text: &str) -> Result<Expr> {
    parse_ast_at(text, Pos { line: 1, column: 1 })
}

fn not_scalar(pos: Option<Pos>, what: &str) -> Error {
    let pos = pos.unwrap_or(Pos { line: 1, column: 1 });
    syntax(pos, format!("{what} is not allowed in a scalar expression"))
}

/// Evaluate an expression tree to a polynomial; identifiers resolve to chart
/// coordinates first, then through `lookup`.
pub fn eval_poly(
    e: &Expr,
    chart: &ChartRef,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial> {
    Ok(match e {
        Expr::Int(n) => Polynomial::constant(chart, Rational::from_integer(n.clone())),
        Expr::Ident(name, _) => resolve(name, chart, lookup)?,
        Expr::Differential(_, p) => return Err(not_scalar(Some(*p), "a differential")),
        Expr::Vector(_, p) => return Err(not_scalar(Some(*p), "a vector")),
        Expr::Neg(a) => -eval_poly(a, chart, lookup)?,
        Expr::Add(a, b) => eval_poly(a, chart, lookup)? + eval_poly(b, chart, lookup)?,
        Expr::Sub(a, b) => eval_poly(a, chart, lookup)? - eval_poly(b, chart, lookup)?,
        Expr::Mul(a, b) => eval_poly(a, chart, lookup)? * eval_poly(b, chart, lookup)?,
        Expr::Div(a, b, _) => {
            eval_poly(a, chart, lookup)?.exact_divide(&eval_poly(b, chart, lookup)?)?
        }
        Expr::Pow(a, n) => eval_poly(a, chart, lookup)?.pow(*n),
        Expr::Wedge(..) => return Err(not_scalar(None, "a wedge product")),
    })
}

fn resolve(
    name: &str,
    chart: &ChartRef,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial> {
    match chart.index_of(name) {
        Some(i) => Polynomial::var(chart, i),
        None => lookup(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string())),
    }
}

/// Same as [`eval_poly`] but division produces a quotient instead of
/// requiring exact divisibility.
pub fn eval_ratexpr(
    e: &Expr,
    chart: &ChartRef,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<RationalExpr> {
    let rec = |x: &Expr| eval_ratexpr(x, chart, lookup);
    Ok(match e {
        Expr::Int(_) | Expr::Ident(..) => RationalExpr::from_poly(eval_poly(e, chart, lookup)?),
        Expr::Differential(_, p) => return Err(not_scalar(Some(*p), "a differential")),
        Expr::Vector(_, p) => return Err(not_scalar(Some(*p), "a vector")),
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?)?,
        Expr::Div(a, b, p) => {
            let d = rec(b)?;
            if d.is_zero() {
                return Err(syntax(*p, "division by zero"));
            }
            rec(a)?.div(&d)?
        }
        Expr::Pow(a, n) => {
            let base = rec(a)?;
            let mut acc = RationalExpr::from_poly(Polynomial::one(chart));
            for _ in 0..*n {
                acc = acc.mul(&base)?;
            }
            acc
        }
        Expr::Wedge(..) => return Err(not_scalar(None, "a wedge product")),
    })
}

/// Parse a polynomial over the chart's coordinates.
pub fn parse_expr(text: &str, chart: &ChartRef) -> Result<Polynomial> {
    eval_poly(&parse_ast(text)?, chart, &|_| None)
}

/// Parse a quotient of polynomials, e.g. `(q1 + 1)/(p1)`.
pub fn parse_ratexpr(text: &str, chart: &ChartRef) -> Result<RationalExpr> {
    eval_ratexpr(&parse_ast(text)?, chart, &|_| None)
}
