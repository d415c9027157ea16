use std::fmt;

use super::chart::ChartRef;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Unreduced quotient of two polynomials.
///
/// No common factors are cancelled; equality is decided by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalExpr {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalExpr {
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self> {
        super::chart::ensure_same(numer.chart(), denom.chart())?;
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalExpr { numer, denom })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let denom = Polynomial::one(p.chart());
        RationalExpr { numer: p, denom }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn chart(&self) -> &ChartRef {
        self.numer.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn add(&self, other: &RationalExpr) -> Result<RationalExpr> {
        if self.denom == other.denom {
            return RationalExpr::new(self.numer.try_add(&other.numer)?, self.denom.clone());
        }
        let n = self.numer.try_mul(&other.denom)?.try_add(&other.numer.try_mul(&self.denom)?)?;
        RationalExpr::new(n, &self.denom * &other.denom)
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { numer: -&self.numer, denom: self.denom.clone() }
    }

    pub fn sub(&self, other: &RationalExpr) -> Result<RationalExpr> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalExpr) -> Result<RationalExpr> {
        RationalExpr::new(self.numer.try_mul(&other.numer)?, self.denom.try_mul(&other.denom)?)
    }

    pub fn div(&self, other: &RationalExpr) -> Result<RationalExpr> {
        RationalExpr::new(self.numer.try_mul(&other.denom)?, self.denom.try_mul(&other.numer)?)
    }

    /// The polynomial this expression equals, if the denominator divides
    /// the numerator exactly.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.numer.exact_divide(&self.denom).ok()
    }

    /// Numerator divided through when the denominator is a constant; the
    /// result is the canonical printable form.
    pub fn normalized(&self) -> RationalExpr {
        if let Some(p) = self.to_polynomial() {
            return RationalExpr::from_poly(p);
        }
        // Make the denominator's leading coefficient 1.
        let (_, lc) = self.denom.leading_term().expect("nonzero denominator");
        let inv = num_traits::Inv::inv(lc.clone());
        RationalExpr { numer: self.numer.scale(&inv), denom: self.denom.scale(&inv) }
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        match (
            self.numer.try_mul(&other.denom),
            other.numer.try_mul(&self.denom),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for RationalExpr {}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        if n.denom.is_one() {
            write!(f, "{}", n.numer)
        } else {
            write!(f, "({})/({})", n.numer, n.denom)
        }
    }
}
