//! Scenario files.
//!
//! ```text
//! # comment
//! [chart]
//! coords = q1 q2 q3 p1 p2 p3
//! distinguished = s            # optional
//!
//! [define]
//! function B3 = q1
//! form omega = d(p1)^d(q1) + d(p2)^d(q2) + d(p3)^d(q3) - B3*d(q1)^d(q2)
//! multivector L = e(p1)^e(q1)
//! constraints theta = q2, p2
//!
//! [tasks]
//! pp12 = power-bracket omega k=1 p1 p2 => B3
//! ```
//!
//! Task arguments are whitespace-separated; each is a declared name or an
//! inline expression without spaces. Everything after `=>` is the expected
//! value. Every expression, name and arity is checked while parsing, before
//! any task runs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::syntax::{eval_value, Value};
use crate::exterior::{Form, Multivector};
use crate::polyring::parse::{eval_ratexpr, parse_ast_at, Pos};
use crate::polyring::{Chart, ChartRef, Polynomial, RationalExpr};
use crate::suites::SUITES;

/// A named entity from the `[define]` section.
#[derive(Debug, Clone, PartialEq)]
pub enum Entity {
    Function(Polynomial),
    Form(Form),
    Multivector(Multivector),
    Constraints(Vec<Polynomial>),
}

impl Entity {
    fn as_value(&self) -> Option<Value> {
        match self {
            Entity::Function(p) => Some(Value::Scalar(p.clone())),
            Entity::Form(f) => Some(Value::Form(f.clone())),
            Entity::Multivector(m) => Some(Value::Multivector(m.clone())),
            Entity::Constraints(_) => None,
        }
    }
}

/// A task with all inputs resolved.
#[derive(Debug, Clone)]
pub enum Job {
    Bracket { volume: Form, alpha: Form, fs: Vec<Polynomial> },
    PowerBracket { omega: Form, k: usize, fs: Vec<Polynomial> },
    Nambu { volume: Form, gamma: Polynomial, fs: Vec<Polynomial> },
    DiracMatrix { omega: Form, thetas: Vec<Polynomial>, f: Polynomial, g: Polynomial },
    DiracForm { omega: Form, thetas: Vec<Polynomial>, f: Polynomial, g: Polynomial },
    CalibrateDirac { omega: Form, thetas: Vec<Polynomial> },
    DerivedVf { omega: Form, k: usize, fs: Vec<Polynomial> },
    Schouten { a: Multivector, b: Multivector },
    CheckJacobi { source: JacobiSource, args: Option<[Polynomial; 3]> },
    CheckPoisson { lambda: Multivector },
    CheckJacobiPair { lambda: Multivector, x: Multivector },
    VerifySuite { suite: String, n: Option<usize> },
}

/// The binary bracket whose Jacobi identity `check-jacobi` tests.
#[derive(Debug, Clone)]
pub enum JacobiSource {
    /// `{f,g}` from the inverse of a 2-form (closed or not).
    Form(Form),
    Bivector(Multivector),
    /// `Λ(f,g) + fX(g) − gX(f)`.
    Pair(Multivector, Multivector),
}

/// The kind of value a command produces, which fixes how `=> expected` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    Scalar,
    Multivector,
    Boolean,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Scalar(RationalExpr),
    Multivector(Multivector),
    Boolean(bool),
}

#[derive(Debug, Clone)]
pub struct Task {
    pub name: String,
    pub line: usize,
    pub command: String,
    /// Arguments as written, for echoing.
    pub args: String,
    pub job: Job,
    pub expected: Option<Expected>,
    /// The expected value as written.
    pub expected_text: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub chart: ChartRef,
    pub entities: BTreeMap<String, Entity>,
    pub tasks: Vec<Task>,
}

pub const COMMANDS: &[&str] = &[
    "bracket",
    "power-bracket",
    "nambu",
    "dirac-matrix",
    "dirac-form",
    "derived-vf",
    "schouten",
    "check-jacobi",
    "check-poisson",
    "check-jacobi-pair",
    "calibrate-dirac",
    "verify-suite",
];

fn result_kind(command: &str) -> ResultKind {
    match command {
        "derived-vf" | "schouten" => ResultKind::Multivector,
        c if c.starts_with("check-") || c == "verify-suite" => ResultKind::Boolean,
        _ => ResultKind::Scalar,
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Scenario(format!("line {line}: {}", message.into()))
}

/// Attach a line number to errors that carry no position of their own.
fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Syntax { .. } => e,
        Error::Scenario(m) => Error::Scenario(m),
        other => err(line, other.to_string()),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(PartialEq)]
enum Section {
    None,
    Chart,
    Define,
    Tasks,
}

/// Byte offset → 1-based column.
fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str, start: usize, end: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut i = start;
    let bytes = line.as_bytes();
    while i < end {
        while i < end && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let s = i;
        while i < end && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if s < i {
            out.push((&line[s..i], column(line, s)));
        }
    }
    out
}

struct Builder {
    chart: Option<ChartRef>,
    coords: Option<Vec<String>>,
    distinguished: Option<String>,
    chart_line: usize,
    entities: BTreeMap<String, Entity>,
    tasks: Vec<Task>,
}

impl Builder {
    fn chart(&mut self, line: usize) -> Result<ChartRef> {
        if let Some(c) = &self.chart {
            return Ok(c.clone());
        }
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| err(line, "the [chart] section must declare `coords`"))?;
        let chart = match &self.distinguished {
            Some(s) => Chart::with_distinguished(coords, s),
            None => Chart::new(coords),
        }
        .map_err(at_line(self.chart_line))?;
        self.chart = Some(chart.clone());
        Ok(chart)
    }

    fn eval(&self, chart: &ChartRef, text: &str, line: usize, col: usize) -> Result<Value> {
        let ast = parse_ast_at(text, Pos { line, column: col })?;
        let lookup = |name: &str| self.entities.get(name).and_then(Entity::as_value);
        eval_value(&ast, chart, &lookup).map_err(|e| match e {
            Error::UnknownIdentifier(name) if self.entities.contains_key(&name) => {
                err(line, format!("`{name}` is a constraint list and cannot appear in an expression"))
            }
            Error::UnknownIdentifier(name) => err(line, format!("undeclared name `{name}`")),
            other => at_line(line)(other),
        })
    }
}

pub fn parse_scenario_file(path: &std::path::Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut b = Builder {
        chart: None,
        coords: None,
        distinguished: None,
        chart_line: 0,
        entities: BTreeMap::new(),
        tasks: Vec::new(),
    };
    let mut section = Section::None;
    let mut seen_chart = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content_end = raw.find('#').unwrap_or(raw.len());
        let content = raw[..content_end].trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            section = match content {
                "[chart]" if seen_chart => return Err(err(line_no, "chart declared twice")),
                "[chart]" => {
                    seen_chart = true;
                    b.chart_line = line_no;
                    Section::Chart
                }
                "[define]" | "[tasks]" => {
                    if !seen_chart {
                        return Err(err(line_no, "the [chart] section must come first"));
                    }
                    b.chart(line_no)?;
                    if content == "[define]" {
                        Section::Define
                    } else {
                        Section::Tasks
                    }
                }
                other => return Err(err(line_no, format!("unknown section {other}"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(err(line_no, "content before the [chart] section")),
            Section::Chart => chart_line(&mut b, raw, content_end, line_no)?,
            Section::Define => define_line(&mut b, raw, content_end, line_no)?,
            Section::Tasks => task_line(&mut b, raw, content_end, line_no)?,
        }
    }
    if !seen_chart {
        return Err(Error::Scenario("no [chart] section".into()));
    }
    let chart = b.chart(b.chart_line)?;
    Ok(Scenario { chart, entities: b.entities, tasks: b.tasks })
}

fn split_assignment(raw: &str, end: usize, line: usize) -> Result<(usize, usize)> {
    let eq = raw[..end].find('=').ok_or_else(|| err(line, "expected `name = ...`"))?;
    Ok((eq, eq + 1))
}

fn chart_line(b: &mut Builder, raw: &str, end: usize, line: usize) -> Result<()> {
    let (eq, rhs) = split_assignment(raw, end, line)?;
    let key = raw[..eq].trim();
    let value = raw[rhs..end].trim();
    match key {
        "coords" if b.coords.is_some() => Err(err(line, "coords declared twice")),
        "coords" => {
            let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                return Err(err(line, format!("`{bad}` is not a valid coordinate name")));
            }
            b.coords = Some(names);
            Ok(())
        }
        "distinguished" => {
            b.distinguished = Some(value.to_string());
            Ok(())
        }
        other => Err(err(line, format!("unknown chart key `{other}`"))),
    }
}

fn define_line(b: &mut Builder, raw: &str, end: usize, line: usize) -> Result<()> {
    let chart = b.chart(line)?;
    let (eq, rhs) = split_assignment(raw, end, line)?;
    let head: Vec<&str> = raw[..eq].split_whitespace().collect();
    let [kind, name] = head[..] else {
        return Err(err(line, "expected `function|form|multivector|constraints NAME = expression`"));
    };
    if !is_identifier(name) || name == "d" || name == "e" {
        return Err(err(line, format!("`{name}` is not a valid name")));
    }
    if chart.index_of(name).is_some() {
        return Err(err(line, format!("`{name}` is a coordinate")));
    }
    if b.entities.contains_key(name) {
        return Err(err(line, format!("`{name}` is already defined")));
    }
    let text = &raw[rhs..end];
    let col = column(raw, rhs);
    let entity = match kind {
        "function" => Entity::Function(b.eval(&chart, text, line, col)?.into_scalar().map_err(at_line(line))?),
        "form" => Entity::Form(b.eval(&chart, text, line, col)?.into_form().map_err(at_line(line))?),
        "multivector" => {
            Entity::Multivector(b.eval(&chart, text, line, col)?.into_multivector().map_err(at_line(line))?)
        }
        "constraints" => {
            let mut out = Vec::new();
            let mut offset = rhs;
            for piece in text.split(',') {
                let v = b.eval(&chart, piece, line, column(raw, offset))?;
                out.push(v.into_scalar().map_err(at_line(line))?);
                offset += piece.len() + 1;
            }
            Entity::Constraints(out)
        }
        other => return Err(err(line, format!("unknown kind `{other}`"))),
    };
    b.entities.insert(name.to_string(), entity);
    Ok(())
}

struct Args<'a> {
    b: &'a Builder,
    chart: ChartRef,
    line: usize,
    toks: Vec<(&'a str, usize)>,
    options: BTreeMap<String, (usize, usize)>,
}

impl<'a> Args<'a> {
    fn value(&self, i: usize) -> Result<Value> {
        let (text, col) = self.toks[i];
        self.b.eval(&self.chart, text, self.line, col)
    }

    fn form(&self, i: usize, what: &str) -> Result<Form> {
        self.value(i)?.into_form().map_err(|_| err(self.line, format!("{what} must be a form")))
    }

    fn multivector(&self, i: usize, what: &str) -> Result<Multivector> {
        self.value(i)?
            .into_multivector()
            .map_err(|_| err(self.line, format!("{what} must be a multivector")))
    }

    fn function(&self, i: usize) -> Result<Polynomial> {
        self.value(i)?
            .into_scalar()
            .map_err(|_| err(self.line, format!("argument `{}` must be a function", self.toks[i].0)))
    }

    fn functions(&self, from: usize) -> Result<Vec<Polynomial>> {
        (from..self.toks.len()).map(|i| self.function(i)).collect()
    }

    fn constraints(&self, i: usize) -> Result<Vec<Polynomial>> {
        let (name, _) = self.toks[i];
        match self.b.entities.get(name) {
            Some(Entity::Constraints(c)) => Ok(c.clone()),
            Some(_) => Err(err(self.line, format!("`{name}` is not a constraint list"))),
            None => Err(err(self.line, format!("undeclared name `{name}`"))),
        }
    }

    fn count(&self, expected: usize) -> Result<()> {
        if self.toks.len() != expected {
            return Err(err(
                self.line,
                format!("expected {expected} arguments, got {}", self.toks.len()),
            ));
        }
        Ok(())
    }

    fn at_least(&self, expected: usize) -> Result<()> {
        if self.toks.len() < expected {
            return Err(err(
                self.line,
                format!("expected at least {expected} arguments, got {}", self.toks.len()),
            ));
        }
        Ok(())
    }

    fn option(&self, key: &str) -> Option<usize> {
        self.options.get(key).map(|&(v, _)| v)
    }

    fn require_option(&self, key: &str) -> Result<usize> {
        self.option(key).ok_or_else(|| err(self.line, format!("missing `{key}=`")))
    }

    fn allow_options(&self, keys: &[&str]) -> Result<()> {
        match self.options.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(err(self.line, format!("unexpected option `{k}=`"))),
            None => Ok(()),
        }
    }
}

fn task_line(b: &mut Builder, raw: &str, end: usize, line: usize) -> Result<()> {
    let chart = b.chart(line)?;
    let (eq, rhs) = split_assignment(raw, end, line)?;
    let name = raw[..eq].trim();
    if !is_identifier(name) {
        return Err(err(line, format!("`{name}` is not a valid task name")));
    }
    if b.tasks.iter().any(|t| t.name == name) {
        return Err(err(line, format!("task `{name}` is defined twice")));
    }
    let arrow = raw[rhs..end].find("=>").map(|i| i + rhs);
    let body_end = arrow.unwrap_or(end);
    let mut toks = tokens(raw, rhs, body_end);
    if toks.is_empty() {
        return Err(err(line, "missing command"));
    }
    let (command, _) = toks.remove(0);
    if !COMMANDS.contains(&command) {
        return Err(err(line, format!("unknown command `{command}`")));
    }
    let args_text = toks.iter().map(|(t, _)| *t).collect::<Vec<_>>().join(" ");
    let mut options = BTreeMap::new();
    let mut positional = Vec::new();
    for (t, col) in toks {
        match t.split_once('=') {
            Some((k, v)) if is_identifier(k) => {
                let v: usize = v.parse().map_err(|_| err(line, format!("`{t}`: expected a nonnegative integer")))?;
                options.insert(k.to_string(), (v, col));
            }
            _ => positional.push((t, col)),
        }
    }
    let args = Args { b, chart: chart.clone(), line, toks: positional, options };
    let job = build_job(command, &args)?;
    let (expected, expected_text) = match arrow {
        Some(a) => {
            let text = raw[a + 2..end].trim();
            if text.is_empty() {
                return Err(err(line, "empty expected value after `=>`"));
            }
            let col = column(raw, a + 2 + (raw[a + 2..end].len() - raw[a + 2..end].trim_start().len()));
            (Some(parse_expected(b, &chart, result_kind(command), text, line, col)?), Some(text.to_string()))
        }
        None => (None, None),
    };
    b.tasks.push(Task {
        name: name.to_string(),
        line,
        command: command.to_string(),
        args: args_text,
        job,
        expected,
        expected_text,
    });
    Ok(())
}

fn parse_expected(
    b: &Builder,
    chart: &ChartRef,
    kind: ResultKind,
    text: &str,
    line: usize,
    col: usize,
) -> Result<Expected> {
    match kind {
        ResultKind::Boolean => match text {
            "true" => Ok(Expected::Boolean(true)),
            "false" => Ok(Expected::Boolean(false)),
            _ => Err(err(line, format!("expected `true` or `false`, found `{text}`"))),
        },
        ResultKind::Multivector => Ok(Expected::Multivector(
            b.eval(chart, text, line, col)?.into_multivector().map_err(at_line(line))?,
        )),
        ResultKind::Scalar => {
            let ast = parse_ast_at(text, Pos { line, column: col })?;
            let lookup = |name: &str| match b.entities.get(name) {
                Some(Entity::Function(p)) => Some(p.clone()),
                _ => None,
            };
            let r = eval_ratexpr(&ast, chart, &lookup).map_err(|e| match e {
                Error::UnknownIdentifier(n) => err(line, format!("undeclared function `{n}`")),
                other => at_line(line)(other),
            })?;
            Ok(Expected::Scalar(r))
        }
    }
}

fn build_job(command: &str, a: &Args) -> Result<Job> {
    let line = a.line;
    let job = match command {
        "bracket" => {
            a.allow_options(&[])?;
            a.at_least(2)?;
            let volume = a.form(0, "the volume")?;
            let alpha = a.form(1, "α")?;
            let dim = a.chart.dim();
            if volume.grade() != dim {
                return Err(err(line, format!("the volume must have grade {dim}")));
            }
            let fs = a.functions(2)?;
            if fs.len() + alpha.grade() != dim {
                return Err(err(
                    line,
                    format!("expected {} functions for α of grade {}, got {}", dim - alpha.grade().min(dim), alpha.grade(), fs.len()),
                ));
            }
            Job::Bracket { volume, alpha, fs }
        }
        "power-bracket" | "derived-vf" => {
            a.allow_options(&["k"])?;
            let k = a.require_option("k")?;
            if k == 0 {
                return Err(err(line, "k must be at least 1"));
            }
            let want = if command == "power-bracket" { 2 * k } else { 2 * k - 1 };
            a.count(want + 1)?;
            let omega = a.form(0, "ω")?;
            let fs = a.functions(1)?;
            if command == "power-bracket" {
                Job::PowerBracket { omega, k, fs }
            } else {
                Job::DerivedVf { omega, k, fs }
            }
        }
        "nambu" => {
            a.allow_options(&[])?;
            a.count(a.chart.dim() + 2)?;
            Job::Nambu { volume: a.form(0, "the volume")?, gamma: a.function(1)?, fs: a.functions(2)? }
        }
        "dirac-matrix" | "dirac-form" => {
            a.allow_options(&[])?;
            a.count(4)?;
            let (omega, thetas) = (a.form(0, "ω")?, a.constraints(1)?);
            let (f, g) = (a.function(2)?, a.function(3)?);
            if command == "dirac-matrix" {
                Job::DiracMatrix { omega, thetas, f, g }
            } else {
                Job::DiracForm { omega, thetas, f, g }
            }
        }
        "calibrate-dirac" => {
            a.allow_options(&[])?;
            a.count(2)?;
            Job::CalibrateDirac { omega: a.form(0, "ω")?, thetas: a.constraints(1)? }
        }
        "schouten" => {
            a.allow_options(&[])?;
            a.count(2)?;
            Job::Schouten { a: a.multivector(0, "A")?, b: a.multivector(1, "B")? }
        }
        "check-jacobi" => {
            a.allow_options(&[])?;
            a.at_least(1)?;
            let (source, rest) = match a.value(0)? {
                Value::Form(f) => (JacobiSource::Form(f), 1),
                Value::Multivector(l) => match a.toks.get(1).map(|_| a.value(1)).transpose()? {
                    Some(Value::Multivector(x)) if x.grade() == 1 => (JacobiSource::Pair(l, x), 2),
                    _ => (JacobiSource::Bivector(l), 1),
                },
                Value::Scalar(_) => return Err(err(line, "check-jacobi needs a 2-form or a bivector")),
            };
            let fs = a.functions(rest)?;
            let args = match fs.len() {
                0 => None,
                3 => Some([fs[0].clone(), fs[1].clone(), fs[2].clone()]),
                n => return Err(err(line, format!("expected 0 or 3 functions, got {n}"))),
            };
            Job::CheckJacobi { source, args }
        }
        "check-poisson" => {
            a.allow_options(&[])?;
            a.count(1)?;
            let lambda = match a.value(0)? {
                Value::Form(f) => crate::exterior::poisson_bivector(&f).map_err(at_line(line))?,
                other => other.into_multivector().map_err(at_line(line))?,
            };
            Job::CheckPoisson { lambda }
        }
        "check-jacobi-pair" => {
            a.allow_options(&[])?;
            a.count(2)?;
            Job::CheckJacobiPair { lambda: a.multivector(0, "Λ")?, x: a.multivector(1, "X")? }
        }
        "verify-suite" => {
            a.allow_options(&["n"])?;
            a.count(1)?;
            let suite = a.toks[0].0.to_string();
            if !SUITES.iter().any(|(s, _)| *s == suite) {
                return Err(err(line, format!("unknown suite `{suite}`")));
            }
            Job::VerifySuite { suite, n: a.option("n") }
        }
        other => return Err(err(line, format!("unknown command `{other}`"))),
    };
    Ok(job)
}
