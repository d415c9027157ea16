//! Text syntax for forms and multivectors: `coeff * d(q1)^d(p1)` and
//! `coeff * e(q1)^e(p1)`, terms joined by `+`/`-`. Bare expressions are
//! grade-0 terms.

use super::graded::{Form, Graded, Multivector, Variance};
use crate::error::{Error, Result};
use crate::polyring::parse::{eval_poly, parse_ast, Expr, Pos};
use crate::polyring::{ChartRef, Polynomial};

/// Any value the scenario language can name.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Polynomial),
    Form(Form),
    Multivector(Multivector),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "function",
            Value::Form(_) => "form",
            Value::Multivector(_) => "multivector",
        }
    }

    pub fn into_form(self) -> Result<Form> {
        match self {
            Value::Form(f) => Ok(f),
            Value::Scalar(p) => Ok(Form::scalar(p)),
            other => Err(kind_error("form", &other)),
        }
    }

    pub fn into_multivector(self) -> Result<Multivector> {
        match self {
            Value::Multivector(m) => Ok(m),
            Value::Scalar(p) => Ok(Multivector::scalar(p)),
            other => Err(kind_error("multivector", &other)),
        }
    }

    pub fn into_scalar(self) -> Result<Polynomial> {
        match self {
            Value::Scalar(p) => Ok(p),
            Value::Form(f) if f.grade() == 0 => Ok(f.as_scalar().unwrap()),
            Value::Multivector(m) if m.grade() == 0 => Ok(m.as_scalar().unwrap()),
            other => Err(kind_error("function", &other)),
        }
    }
}

fn kind_error(want: &str, got: &Value) -> Error {
    Error::GradeMismatch(format!("expected a {want}, found a {}", got.kind()))
}

fn at(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax { line: pos.line, column: pos.column, message: message.into() }
}

fn coordinate(chart: &ChartRef, name: &str) -> Result<usize> {
    chart.index_of(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
}

fn mixed() -> Error {
    Error::GradeMismatch("cannot combine a form with a multivector".into())
}

fn add_graded<V: Variance>(a: &Graded<V>, b: &Graded<V>, negate: bool) -> Result<Graded<V>> {
    if negate {
        a.try_sub(b)
    } else {
        a.try_add(b)
    }
}

fn combine(a: Value, b: Value, negate: bool) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(if negate { x - y } else { x + y }),
        (Form(x), Form(y)) => Form(add_graded(&x, &y, negate)?),
        (Multivector(x), Multivector(y)) => Multivector(add_graded(&x, &y, negate)?),
        (Scalar(x), Form(y)) => Form(add_graded(&Graded::scalar(x), &y, negate)?),
        (Form(x), Scalar(y)) => Form(add_graded(&x, &Graded::scalar(y), negate)?),
        (Scalar(x), Multivector(y)) => Multivector(add_graded(&Graded::scalar(x), &y, negate)?),
        (Multivector(x), Scalar(y)) => Multivector(add_graded(&x, &Graded::scalar(y), negate)?),
        _ => return Err(mixed()),
    })
}

fn wedge(a: Value, b: Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x * y),
        (Scalar(x), Form(y)) | (Form(y), Scalar(x)) => Form(y.scale(&x)?),
        (Scalar(x), Multivector(y)) | (Multivector(y), Scalar(x)) => Multivector(y.scale(&x)?),
        (Form(x), Form(y)) => Form(x.wedge(&y)?),
        (Multivector(x), Multivector(y)) => Multivector(x.wedge(&y)?),
        _ => return Err(mixed()),
    })
}

/// Evaluate an expression tree; identifiers resolve to coordinates first,
/// then through `lookup`.
pub fn eval_value(
    e: &Expr,
    chart: &ChartRef,
    lookup: &dyn Fn(&str) -> Option<Value>,
) -> Result<Value> {
    let rec = |x: &Expr| eval_value(x, chart, lookup);
    Ok(match e {
        Expr::Int(_) => Value::Scalar(eval_poly(e, chart, &|_| None)?),
        Expr::Ident(name, _) => match chart.index_of(name) {
            Some(i) => Value::Scalar(Polynomial::var(chart, i)?),
            None => lookup(name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?,
        },
        Expr::Differential(name, _) => {
            Value::Form(Form::basis(chart, &[coordinate(chart, name)?], Polynomial::one(chart))?)
        }
        Expr::Vector(name, _) => Value::Multivector(Multivector::basis(
            chart,
            &[coordinate(chart, name)?],
            Polynomial::one(chart),
        )?),
        Expr::Neg(a) => match rec(a)? {
            Value::Scalar(p) => Value::Scalar(-p),
            Value::Form(f) => Value::Form(f.neg()),
            Value::Multivector(m) => Value::Multivector(m.neg()),
        },
        Expr::Add(a, b) => combine(rec(a)?, rec(b)?, false)?,
        Expr::Sub(a, b) => combine(rec(a)?, rec(b)?, true)?,
        Expr::Mul(a, b) => match (rec(a)?, rec(b)?) {
            (x @ Value::Scalar(_), y) | (y, x @ Value::Scalar(_)) => wedge(x, y)?,
            _ => {
                return Err(Error::GradeMismatch(
                    "`*` multiplies by a function; use `^` for the wedge product".into(),
                ))
            }
        },
        Expr::Div(a, b, pos) => {
            let d = match rec(b)? {
                Value::Scalar(p) => p,
                _ => return Err(at(*pos, "can only divide by a function")),
            };
            match rec(a)? {
                Value::Scalar(p) => Value::Scalar(p.exact_divide(&d)?),
                Value::Form(f) => Value::Form(f.exact_divide(&d)?),
                Value::Multivector(m) => Value::Multivector(m.exact_divide(&d)?),
            }
        }
        Expr::Pow(a, n) => match rec(a)? {
            Value::Scalar(p) => Value::Scalar(p.pow(*n)),
            Value::Form(f) => Value::Form(f.power(*n as usize)),
            Value::Multivector(m) => Value::Multivector(m.power(*n as usize)),
        },
        Expr::Wedge(a, b) => wedge(rec(a)?, rec(b)?)?,
    })
}

pub fn parse_value(text: &str, chart: &ChartRef) -> Result<Value> {
    eval_value(&parse_ast(text)?, chart, &|_| None)
}

pub fn parse_form(text: &str, chart: &ChartRef) -> Result<Form> {
    parse_value(text, chart)?.into_form()
}

pub fn parse_multivector(text: &str, chart: &ChartRef) -> Result<Multivector> {
    parse_value(text, chart)?.into_multivector()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Chart;

    #[test]
    fn round_trips() {
        let c = Chart::darboux(2).unwrap();
        for text in [
            "d(q1)^d(p1) + d(q2)^d(p2)",
            "(q1 + 1)*d(q1)^d(p1) - 3/2*p2*d(q2)^d(p2)",
            "-q1^2*e(q1) + e(p2)",
            "2*q1*p1 - 1",
            "0",
        ] {
            let v = parse_value(text, &c).unwrap();
            let printed = match &v {
                Value::Scalar(p) => p.to_text(),
                Value::Form(f) => f.to_text(),
                Value::Multivector(m) => m.to_text(),
            };
            assert_eq!(parse_value(&printed, &c).unwrap(), v, "{text} -> {printed}");
        }
    }

    #[test]
    fn wedge_and_power() {
        let c = Chart::darboux(2).unwrap();
        let omega = parse_form("d(p1)^d(q1) + d(p2)^d(q2)", &c).unwrap();
        assert_eq!(
            parse_form("(d(p1)^d(q1) + d(p2)^d(q2))^2", &c).unwrap(),
            omega.power(2)
        );
        assert_eq!(
            parse_form("d(p1)^d(q1)", &c).unwrap(),
            parse_form("-d(q1)^d(p1)", &c).unwrap()
        );
    }

    #[test]
    fn errors() {
        let c = Chart::darboux(1).unwrap();
        assert!(matches!(parse_form("d(q1) + e(p1)", &c), Err(Error::GradeMismatch(_))));
        assert!(matches!(parse_form("d(q1) + d(q1)^d(p1)", &c), Err(Error::GradeMismatch(_))));
        assert_eq!(parse_form("d(x)", &c), Err(Error::UnknownIdentifier("x".into())));
        assert!(matches!(parse_form("d(q1)*d(p1)", &c), Err(Error::GradeMismatch(_))));
    }
}
