//! Dirac brackets for second-class constraints `θ_1, …, θ_{2k}`.
//!
//! Two independent pipelines: the classical formula
//! `{f,g}_D = {f,g} − {f,θ_i} c_{ij} {θ_j,g}` with `(c_{ij}) = C^{-1}`,
//! and the top-form equation
//! `df∧dg∧Θ∧ω^{n−k−1} = c · {f,g}_D Θ∧ω^{n−k}`, `Θ = dθ_1∧…∧dθ_{2k}`.
//! The constant `c` is not assumed; [`calibrate_normalization`] measures it
//! against the matrix formula.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::brackets::{differentials_wedge, BinaryBracket};
use crate::error::{Error, Result};
use crate::exterior::{Form, SymplecticData};
use crate::polyring::{ensure_same, matrix, ChartRef, Polynomial, Rational, RationalExpr};

#[derive(Debug, Clone)]
pub struct ConstraintSet {
    symplectic: SymplecticData,
    thetas: Vec<Polynomial>,
    matrix: Vec<Vec<Polynomial>>,
    det: Polynomial,
    adj: Vec<Vec<Polynomial>>,
    theta_wedge: Form,
    normalization: OnceLock<Result<DiracNormalization>>,
}

impl ConstraintSet {
    /// Caches `C_{ij} = {θ_i, θ_j}`, its determinant and adjugate. Fails only
    /// on an odd or empty list; use [`ConstraintSet::is_regular`] for the
    /// second-class conditions.
    pub fn new(symplectic: &SymplecticData, thetas: Vec<Polynomial>) -> Result<Self> {
        if thetas.is_empty() || !thetas.len().is_multiple_of(2) {
            return Err(Error::Irregular(format!(
                "need an even, nonzero number of constraints, got {}",
                thetas.len()
            )));
        }
        let chart = symplectic.chart();
        for t in &thetas {
            ensure_same(chart, t.chart())?;
        }
        let matrix: Vec<Vec<Polynomial>> = thetas
            .iter()
            .map(|a| thetas.iter().map(|b| symplectic.poisson_bracket(a, b)).collect())
            .collect::<Result<_>>()?;
        let det = matrix::determinant(chart, &matrix);
        let adj = matrix::adjugate(chart, &matrix);
        let theta_wedge = differentials_wedge(chart, &thetas)?;
        Ok(ConstraintSet {
            symplectic: symplectic.clone(),
            thetas,
            matrix,
            det,
            adj,
            theta_wedge,
            normalization: OnceLock::new(),
        })
    }

    pub fn symplectic(&self) -> &SymplecticData {
        &self.symplectic
    }

    pub fn chart(&self) -> &ChartRef {
        self.symplectic.chart()
    }

    pub fn thetas(&self) -> &[Polynomial] {
        &self.thetas
    }

    /// Half the number of constraints.
    pub fn k(&self) -> usize {
        self.thetas.len() / 2
    }

    /// `C_{ij} = {θ_i, θ_j}`.
    pub fn bracket_matrix(&self) -> &[Vec<Polynomial>] {
        &self.matrix
    }

    pub fn det(&self) -> &Polynomial {
        &self.det
    }

    /// `dθ_1∧…∧dθ_{2k}`.
    pub fn theta_wedge(&self) -> &Form {
        &self.theta_wedge
    }

    /// `dθ_1∧…∧dθ_{2k} ≠ 0` and `det C ≠ 0`, as polynomials.
    pub fn is_regular(&self) -> bool {
        !self.theta_wedge.is_zero() && !self.det.is_zero()
    }

    fn require_regular(&self) -> Result<()> {
        if self.theta_wedge.is_zero() {
            return Err(Error::Irregular("dθ_1∧…∧dθ_2k vanishes".into()));
        }
        if self.det.is_zero() {
            return Err(Error::Irregular("det({θ_i, θ_j}) vanishes".into()));
        }
        Ok(())
    }

    /// The normalization constant, measured on first use.
    pub fn normalization(&self) -> Result<DiracNormalization> {
        self.normalization.get_or_init(|| calibrate_normalization(self)).clone()
    }
}

pub fn regularity_check(thetas: &ConstraintSet) -> bool {
    thetas.is_regular()
}

/// `({f,g} det C − Σ {f,θ_i} adj(C)_{ij} {θ_j,g}) / det C`.
pub fn dirac_bracket_matrix(thetas: &ConstraintSet, f: &Polynomial, g: &Polynomial) -> Result<RationalExpr> {
    thetas.require_regular()?;
    let s = &thetas.symplectic;
    let chart = s.chart();
    let f_theta: Vec<Polynomial> =
        thetas.thetas.iter().map(|t| s.poisson_bracket(f, t)).collect::<Result<_>>()?;
    let theta_g: Vec<Polynomial> =
        thetas.thetas.iter().map(|t| s.poisson_bracket(t, g)).collect::<Result<_>>()?;
    let mut correction = Polynomial::zero(chart);
    for (i, fi) in f_theta.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in theta_g.iter().enumerate() {
            if gj.is_zero() || thetas.adj[i][j].is_zero() {
                continue;
            }
            correction = &correction + &(&(fi * &thetas.adj[i][j]) * gj);
        }
    }
    let numer = &(&s.poisson_bracket(f, g)? * &thetas.det) - &correction;
    Ok(RationalExpr::new(numer, thetas.det.clone())?.normalized())
}

fn check_codim(thetas: &ConstraintSet) -> Result<usize> {
    let n = thetas.symplectic.half_dim();
    let k = thetas.k();
    if k >= n {
        return Err(Error::OutOfRange(format!("need k < n, got k = {k}, n = {n}")));
    }
    Ok(n - k)
}

/// Both top forms `(df∧dg∧Θ∧ω^{n−k−1}, Θ∧ω^{n−k})`.
pub fn dirac_form_sides(thetas: &ConstraintSet, f: &Polynomial, g: &Polynomial) -> Result<(Form, Form)> {
    thetas.require_regular()?;
    let r = check_codim(thetas)?;
    let s = &thetas.symplectic;
    let lhs = differentials_wedge(s.chart(), &[f.clone(), g.clone()])?
        .wedge(&thetas.theta_wedge)?
        .wedge(&s.omega_power(r - 1))?;
    let rhs = thetas.theta_wedge.wedge(&s.omega_power(r))?;
    if rhs.is_zero() {
        return Err(Error::Degenerate("Θ∧ω^{n−k} vanishes".into()));
    }
    Ok((lhs, rhs))
}

/// The raw ratio of the two top forms, before normalization.
pub fn dirac_form_quotient(thetas: &ConstraintSet, f: &Polynomial, g: &Polynomial) -> Result<RationalExpr> {
    let (lhs, rhs) = dirac_form_sides(thetas, f, g)?;
    RationalExpr::new(lhs.top_coefficient(), rhs.top_coefficient())
}

/// The form-defined Dirac bracket, divided by the measured constant so that
/// it is directly comparable with [`dirac_bracket_matrix`].
pub fn dirac_bracket_form(thetas: &ConstraintSet, f: &Polynomial, g: &Polynomial) -> Result<RationalExpr> {
    let norm = thetas.normalization()?;
    let q = dirac_form_quotient(thetas, f, g)?;
    let inv = num_traits::Inv::inv(norm.c.clone());
    Ok(RationalExpr::new(q.numer().scale(&inv), q.denom().clone())?.normalized())
}

/// `form quotient = c · matrix bracket`, measured on one reference pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracNormalization {
    pub c: Rational,
    pub n: usize,
    pub k: usize,
    pub reference: (Polynomial, Polynomial),
}

impl DiracNormalization {
    /// Whether `c = 1/(n−k)`.
    pub fn is_inverse_codimension(&self) -> bool {
        self.c == Rational::new(1.into(), ((self.n - self.k) as i64).into())
    }

    /// Whether the form quotient equals `c` times the matrix bracket for `(f, g)`.
    pub fn holds_for(&self, thetas: &ConstraintSet, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        let q = dirac_form_quotient(thetas, f, g)?;
        let m = dirac_bracket_matrix(thetas, f, g)?;
        Ok(q == RationalExpr::new(m.numer().scale(&self.c), m.denom().clone())?)
    }
}

/// `Some(c)` if `a = c·b` for a rational constant `c`, with `b ≠ 0`.
fn constant_ratio(a: &RationalExpr, b: &RationalExpr) -> Option<Rational> {
    let num = a.numer().try_mul(b.denom()).ok()?;
    let den = b.numer().try_mul(a.denom()).ok()?;
    let (lead, dc) = den.leading_term()?;
    let c = num.terms().find(|(m, _)| *m == lead).map(|(_, v)| v / dc).unwrap_or_else(Rational::zero);
    (den.scale(&c) == num).then_some(c)
}

/// Candidate test functions: coordinates, then degree-2 monomials.
fn probe_functions(chart: &ChartRef) -> Vec<Polynomial> {
    let m = chart.dim();
    let vars: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(chart, i).expect("in range")).collect();
    let mut out = vars.clone();
    for i in 0..m {
        for j in i..m {
            out.push(&vars[i] * &vars[j]);
        }
    }
    out
}

/// Finds the first probe pair with a nonzero matrix bracket and returns the
/// constant relating the two pipelines on it.
pub fn calibrate_normalization(thetas: &ConstraintSet) -> Result<DiracNormalization> {
    thetas.require_regular()?;
    check_codim(thetas)?;
    let probes = probe_functions(thetas.chart());
    for (i, f) in probes.iter().enumerate() {
        for g in &probes[i + 1..] {
            let m = dirac_bracket_matrix(thetas, f, g)?;
            if m.is_zero() {
                continue;
            }
            let q = dirac_form_quotient(thetas, f, g)?;
            let c = constant_ratio(&q, &m).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "form quotient {q} is not a constant multiple of {m} for ({f}, {g})"
                ))
            })?;
            return Ok(DiracNormalization {
                c,
                n: thetas.symplectic.half_dim(),
                k: thetas.k(),
                reference: (f.clone(), g.clone()),
            });
        }
    }
    Err(Error::Degenerate("no probe pair has a nonzero Dirac bracket".into()))
}

/// `{f,g}_D` as a binary bracket; errors unless `det C` divides out.
impl BinaryBracket for ConstraintSet {
    fn chart(&self) -> &ChartRef {
        ConstraintSet::chart(self)
    }

    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let r = dirac_bracket_matrix(self, f, g)?;
        r.to_polynomial().ok_or(Error::NotDivisible)
    }
}
