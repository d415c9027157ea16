use std::collections::BTreeMap;
use std::fmt;

use super::chart::{ensure_same, ChartRef};
use super::polynomial::{int, Polynomial};
use crate::error::{Error, Result};

/// Finite sum `Σ e^{λ s} p_λ` with integer weights `λ` in the chart's
/// distinguished coordinate `s` and polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPoly {
    chart: ChartRef,
    s: usize,
    terms: BTreeMap<i64, Polynomial>,
}

impl ExpPoly {
    pub fn zero(chart: &ChartRef) -> Result<Self> {
        let s = chart.distinguished().ok_or(Error::MissingDistinguished)?;
        Ok(ExpPoly { chart: chart.clone(), s, terms: BTreeMap::new() })
    }

    /// `e^{weight·s} · p`.
    pub fn monomial(weight: i64, p: Polynomial) -> Result<Self> {
        let mut out = Self::zero(p.chart())?;
        if !p.is_zero() {
            out.terms.insert(weight, p);
        }
        Ok(out)
    }

    /// Embeds a polynomial as the weight-0 part.
    pub fn from_poly(p: Polynomial) -> Result<Self> {
        Self::monomial(0, p)
    }

    /// `e^{weight·s}`.
    pub fn exp(chart: &ChartRef, weight: i64) -> Result<Self> {
        Self::monomial(weight, Polynomial::one(chart))
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, weight: i64) -> Polynomial {
        self.terms
            .get(&weight)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// The polynomial this value equals when it has no exponential part.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.terms.len() {
            0 => Some(Polynomial::zero(&self.chart)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn push(&mut self, weight: i64, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&weight) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(weight, sum);
        }
    }

    pub fn add(&self, other: &ExpPoly) -> Result<ExpPoly> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.push(*w, p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExpPoly) -> Result<ExpPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            chart: self.chart.clone(),
            s: self.s,
            terms: self.terms.iter().map(|(w, p)| (*w, -p)).collect(),
        }
    }

    /// Weights add under multiplication.
    pub fn mul(&self, other: &ExpPoly) -> Result<ExpPoly> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = ExpPoly { chart: self.chart.clone(), s: self.s, terms: BTreeMap::new() };
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                out.push(wa + wb, pa * pb);
            }
        }
        Ok(out)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<ExpPoly> {
        self.mul(&ExpPoly::from_poly(p.clone())?)
    }

    /// Partial derivative; along `s` uses `∂(e^{λs}p) = e^{λs}(λp + ∂p/∂s)`.
    pub fn partial(&self, coord: usize) -> Result<ExpPoly> {
        self.chart.check_index(coord)?;
        let mut out = ExpPoly { chart: self.chart.clone(), s: self.s, terms: BTreeMap::new() };
        for (w, p) in &self.terms {
            let mut d = p.partial_unchecked(coord);
            if coord == self.s {
                d = &d + &p.scale(&int(*w));
            }
            out.push(*w, d);
        }
        Ok(out)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let s = self.chart.name(self.s);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| match w {
                0 => format!("({p})"),
                _ => format!("exp({w}*{s})*({p})"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::chart::Chart;

    fn chart() -> ChartRef {
        Chart::with_distinguished(&["x", "s"], "s").unwrap()
    }

    #[test]
    fn weights_add() {
        let c = chart();
        let e1 = ExpPoly::exp(&c, 1).unwrap();
        assert_eq!(e1.mul(&e1).unwrap(), ExpPoly::exp(&c, 2).unwrap());
        let back = ExpPoly::exp(&c, -2).unwrap().mul(&e1.mul(&e1).unwrap()).unwrap();
        assert_eq!(back.as_polynomial(), Some(Polynomial::one(&c)));
    }

    #[test]
    fn derivative_along_s() {
        let c = chart();
        let x = Polynomial::var(&c, 0).unwrap();
        let f = ExpPoly::monomial(1, x.clone()).unwrap();
        assert_eq!(f.partial(1).unwrap(), f);
        // d/ds (e^{2s} s) = e^{2s}(2s + 1)
        let s = Polynomial::var(&c, 1).unwrap();
        let g = ExpPoly::monomial(2, s.clone()).unwrap();
        let want = ExpPoly::monomial(2, &s.scale(&int(2)) + &Polynomial::one(&c)).unwrap();
        assert_eq!(g.partial(1).unwrap(), want);
        assert!(f.partial(0).unwrap() == ExpPoly::exp(&c, 1).unwrap());
    }

    #[test]
    fn requires_distinguished_variable() {
        let c = Chart::new(&["x"]).unwrap();
        assert_eq!(ExpPoly::zero(&c), Err(Error::MissingDistinguished));
    }
}
