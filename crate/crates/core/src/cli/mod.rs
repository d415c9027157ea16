//! Scenario runner behind the `npoisson` binary.

mod scenario;

use std::fmt::Write as _;

pub use scenario::{
    parse_scenario, parse_scenario_file, Entity, Expected, JacobiSource, Job, ResultKind, Scenario, Task,
    COMMANDS,
};

use crate::brackets::{
    derived_vf, form_bracket, jacobiator, nambu_top_bracket, omega_power_bracket, BinaryBracket,
    BracketDef, JacobiDef,
};
use crate::dirac::{calibrate_normalization, dirac_bracket_form, dirac_bracket_matrix, ConstraintSet};
use crate::error::Result;
use crate::exterior::{poisson_bivector, Multivector, SymplecticData};
use crate::polyring::{Polynomial, RationalExpr};
use crate::schouten::{is_poisson, jacobi_pair_check, schouten};
use crate::suites::run_suite;

/// A computed value.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Scalar(RationalExpr),
    Multivector(Multivector),
    Boolean { value: bool, detail: Option<String> },
}

impl Outcome {
    /// Canonical text; re-parses to an equal value.
    pub fn text(&self) -> String {
        match self {
            Outcome::Scalar(r) => match r.to_polynomial() {
                Some(p) => p.to_text(),
                None => r.normalized().to_string(),
            },
            Outcome::Multivector(m) => m.to_text(),
            Outcome::Boolean { value, .. } => value.to_string(),
        }
    }

    fn detail(&self) -> Option<&str> {
        match self {
            Outcome::Boolean { detail, .. } => detail.as_deref(),
            _ => None,
        }
    }

    fn matches(&self, expected: &Expected) -> bool {
        match (self, expected) {
            (Outcome::Scalar(a), Expected::Scalar(b)) => a == b,
            (Outcome::Multivector(a), Expected::Multivector(b)) => a == b || (a.is_zero() && b.is_zero()),
            (Outcome::Boolean { value, .. }, Expected::Boolean(b)) => value == b,
            _ => false,
        }
    }
}

fn symplectic(omega: &crate::exterior::Form) -> Result<SymplecticData> {
    SymplecticData::new(omega.clone())
}

fn boolean(value: bool) -> Outcome {
    Outcome::Boolean { value, detail: None }
}

/// Search coordinate triples for a nonzero jacobiator.
fn jacobi_witness<B: BinaryBracket + ?Sized>(b: &B) -> Result<Option<String>> {
    let chart = b.chart().clone();
    let vars: Vec<Polynomial> = (0..chart.dim()).map(|i| Polynomial::var(&chart, i)).collect::<Result<_>>()?;
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            for k in j + 1..vars.len() {
                let v = jacobiator(b, &vars[i], &vars[j], &vars[k])?;
                if !v.is_zero() {
                    return Ok(Some(format!(
                        "jacobiator({}, {}, {}) = {v}",
                        chart.name(i),
                        chart.name(j),
                        chart.name(k)
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn check_jacobi<B: BinaryBracket + ?Sized>(b: &B, args: &Option<[Polynomial; 3]>) -> Result<Outcome> {
    match args {
        Some([f, g, h]) => {
            let v = jacobiator(b, f, g, h)?;
            let detail = (!v.is_zero()).then(|| format!("jacobiator = {v}"));
            Ok(Outcome::Boolean { value: v.is_zero(), detail })
        }
        None => {
            let w = jacobi_witness(b)?;
            Ok(Outcome::Boolean { value: w.is_none(), detail: w })
        }
    }
}

/// Runs one task's computation.
pub fn execute(job: &Job) -> Result<Outcome> {
    Ok(match job {
        Job::Bracket { volume, alpha, fs } => match volume.volume_constant() {
            Ok(_) => Outcome::Scalar(RationalExpr::from_poly(BracketDef::new(volume.clone(), alpha.clone())?.bracket(fs)?)),
            Err(_) => Outcome::Scalar(form_bracket(volume, alpha, fs)?),
        },
        Job::PowerBracket { omega, k, fs } => {
            Outcome::Scalar(RationalExpr::from_poly(omega_power_bracket(&symplectic(omega)?, *k, fs)?))
        }
        Job::Nambu { volume, gamma, fs } => {
            Outcome::Scalar(RationalExpr::from_poly(nambu_top_bracket(volume, gamma, fs)?))
        }
        Job::DiracMatrix { omega, thetas, f, g } => {
            let set = ConstraintSet::new(&symplectic(omega)?, thetas.clone())?;
            Outcome::Scalar(dirac_bracket_matrix(&set, f, g)?)
        }
        Job::DiracForm { omega, thetas, f, g } => {
            let set = ConstraintSet::new(&symplectic(omega)?, thetas.clone())?;
            Outcome::Scalar(dirac_bracket_form(&set, f, g)?)
        }
        Job::CalibrateDirac { omega, thetas } => {
            let set = ConstraintSet::new(&symplectic(omega)?, thetas.clone())?;
            let norm = calibrate_normalization(&set)?;
            let c = Polynomial::constant(set.chart(), norm.c.clone());
            Outcome::Scalar(RationalExpr::from_poly(c))
        }
        Job::DerivedVf { omega, k, fs } => Outcome::Multivector(derived_vf(&symplectic(omega)?, *k, fs)?),
        Job::Schouten { a, b } => Outcome::Multivector(schouten(a, b)?),
        Job::CheckJacobi { source, args } => match source {
            JacobiSource::Form(w) => check_jacobi(&poisson_bivector(w)?, args)?,
            JacobiSource::Bivector(l) => check_jacobi(l, args)?,
            JacobiSource::Pair(l, x) => check_jacobi(&JacobiDef::new(l.clone(), x.clone())?, args)?,
        },
        Job::CheckPoisson { lambda } => boolean(is_poisson(lambda)?),
        Job::CheckJacobiPair { lambda, x } => boolean(jacobi_pair_check(lambda, x)?),
        Job::VerifySuite { suite, n } => {
            let r = run_suite(suite, *n)?;
            let detail = format!("{} checks, {} failed", r.checks, r.failures.len());
            Outcome::Boolean { value: r.passed(), detail: Some(detail) }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
    /// Computed, no expectation given.
    Done,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Done => "DONE",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TaskReport {
    pub name: String,
    pub command: String,
    pub args: String,
    pub status: Status,
    pub result: String,
    pub detail: Option<String>,
    pub expected: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub chart: String,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    fn count(&self, s: Status) -> usize {
        self.tasks.iter().filter(|t| t.status == s).count()
    }

    /// Every expectation matched and nothing errored.
    pub fn success(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Error) == 0
    }

    fn summary(&self) -> [usize; 5] {
        [
            self.tasks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error),
            self.count(Status::Done),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "chart: {}", self.chart);
        for t in &self.tasks {
            let _ = writeln!(out, "[{}] {}: {} {}", t.status.label(), t.name, t.command, t.args);
            let label = if t.status == Status::Error { "error" } else { "result" };
            let _ = writeln!(out, "    {label:<9}{}", t.result);
            if let Some(d) = &t.detail {
                let _ = writeln!(out, "    {:<9}{d}", "detail");
            }
            if let Some(e) = &t.expected {
                let _ = writeln!(out, "    {:<9}{e}", "expected");
            }
        }
        let [n, pass, fail, error, done] = self.summary();
        let _ = writeln!(
            out,
            "summary: {n} tasks, {pass} passed, {fail} failed, {error} errors, {done} unchecked"
        );
        out
    }

    /// One tab-separated line per task:
    /// `task name status command args result expected detail`, then a
    /// `summary` line with the five counts.
    pub fn to_machine(&self) -> String {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        let mut out = String::new();
        for t in &self.tasks {
            let _ = writeln!(
                out,
                "task\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                t.name,
                t.status.label(),
                t.command,
                clean(&t.args),
                clean(&t.result),
                clean(t.expected.as_deref().unwrap_or("")),
                clean(t.detail.as_deref().unwrap_or(""))
            );
        }
        let [n, pass, fail, error, done] = self.summary();
        let _ = writeln!(out, "summary\t{n}\t{pass}\t{fail}\t{error}\t{done}");
        out
    }
}

pub fn run_task(task: &Task) -> TaskReport {
    let (status, result, detail) = match execute(&task.job) {
        Ok(outcome) => {
            let detail = outcome.detail().map(str::to_string);
            let status = match &task.expected {
                Some(e) if outcome.matches(e) => Status::Pass,
                Some(_) => Status::Fail,
                // Checks assert by default.
                None if matches!(outcome, Outcome::Boolean { value: false, .. }) => Status::Fail,
                None if matches!(outcome, Outcome::Boolean { .. }) => Status::Pass,
                None => Status::Done,
            };
            (status, outcome.text(), detail)
        }
        Err(e) => (Status::Error, e.to_string(), None),
    };
    TaskReport {
        name: task.name.clone(),
        command: task.command.clone(),
        args: task.args.clone(),
        status,
        result,
        detail,
        expected: task.expected_text.clone(),
    }
}

/// Runs the tasks in order, or only the named one.
pub fn run(scenario: &Scenario, only: Option<&str>) -> Result<Report> {
    let tasks: Vec<&Task> = match only {
        Some(name) => {
            let t = scenario
                .tasks
                .iter()
                .find(|t| t.name == name)
                .ok_or_else(|| crate::Error::Scenario(format!("no task named `{name}`")))?;
            vec![t]
        }
        None => scenario.tasks.iter().collect(),
    };
    Ok(Report {
        chart: scenario.chart.names().join(" "),
        tasks: tasks.into_iter().map(run_task).collect(),
    })
}
