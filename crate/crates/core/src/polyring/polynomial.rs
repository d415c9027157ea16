use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chart::{ensure_same, ChartRef};
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Dense exponent vector, one entry per chart coordinate.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first coordinate, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so two polynomials on the same chart
/// are equal exactly when their term maps are equal.
#[derive(Debug, Clone)]
pub struct Polynomial {
    chart: ChartRef,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        super::chart::same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(chart: &ChartRef) -> Self {
        Polynomial { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &ChartRef) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: &ChartRef, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.dim()), c);
        }
        p
    }

    pub fn from_int(chart: &ChartRef, c: i64) -> Self {
        Self::constant(chart, int(c))
    }

    /// The coordinate function with the given index.
    pub fn var(chart: &ChartRef, index: usize) -> Result<Self> {
        chart.check_index(index)?;
        let mut p = Self::zero(chart);
        p.terms.insert(Monomial::var(chart.dim(), index), Rational::one());
        Ok(p)
    }

    /// The coordinate function with the given name.
    pub fn named(chart: &ChartRef, name: &str) -> Result<Self> {
        let i = chart
            .index_of(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        Self::var(chart, i)
    }

    pub fn from_terms<I>(chart: &ChartRef, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(chart);
        for (exps, c) in terms {
            if exps.len() != chart.dim() {
                return Err(Error::IndexOutOfRange { index: exps.len(), dim: chart.dim() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Whether any term has a positive exponent in the given coordinate.
    pub fn depends_on(&self, coord: usize) -> bool {
        self.terms.keys().any(|m| m.0.get(coord).is_some_and(|&e| e > 0))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = Polynomial::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.chart);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.chart);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to coordinate `coord`.
    pub fn partial(&self, coord: usize) -> Result<Polynomial> {
        self.chart.check_index(coord)?;
        Ok(self.partial_unchecked(coord))
    }

    pub(crate) fn partial_unchecked(&self, coord: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[coord];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[coord] -= 1;
            out.add_term(Monomial(exps), c * int(i64::from(e)));
        }
        out
    }

    /// Gradient as the list of all first partials, in chart order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.chart.dim()).map(|i| self.partial_unchecked(i)).collect()
    }

    /// Exact quotient `q` with `q * divisor == self`.
    ///
    /// Fails with [`Error::NotDivisible`] when no such polynomial exists.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        ensure_same(&self.chart, &divisor.chart)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.chart);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Err(Error::NotDivisible);
            }
            let mut t = Polynomial::zero(&self.chart);
            t.add_term(rm.div(lm), rc / lc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok(quot)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition across charts")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction across charts")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication across charts")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(chart: &ChartRef, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.name(i).to_string()),
            _ => parts.push(format!("{}^{}", chart.name(i), e)),
        }
    }
    parts.join("*")
}

impl Polynomial {
    /// Canonical text: terms in descending graded-lexicographic order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(&self.chart, m);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::chart::Chart;

    fn chart() -> ChartRef {
        Chart::new(&["q1", "p1"]).unwrap()
    }

    #[test]
    fn cancellation_and_products() {
        let c = chart();
        let q = Polynomial::var(&c, 0).unwrap();
        let p = Polynomial::var(&c, 1).unwrap();
        let one = Polynomial::one(&c);
        assert_eq!(&(&q + &p) + &(&q - &p), q.scale(&int(2)));
        assert_eq!((&q * &q).to_text(), "q1^2");
        assert_eq!((&(&q + &one) * &(&q - &one)).to_text(), "q1^2 - 1");
    }

    #[test]
    fn partials() {
        let c = chart();
        let q = Polynomial::var(&c, 0).unwrap();
        let p = Polynomial::var(&c, 1).unwrap();
        let q2 = &q * &q;
        assert_eq!(q2.partial(0).unwrap(), q.scale(&int(2)));
        assert!(q2.partial(1).unwrap().is_zero());
        assert_eq!((&q * &p).partial(1).unwrap(), q);
        assert_eq!(q.partial(2), Err(Error::IndexOutOfRange { index: 2, dim: 2 }));
    }

    #[test]
    fn division() {
        let c = chart();
        let q = Polynomial::var(&c, 0).unwrap();
        let p = Polynomial::var(&c, 1).unwrap();
        let one = Polynomial::one(&c);
        let a = &(&q * &q) - &one;
        assert_eq!(a.exact_divide(&(&q - &one)).unwrap(), &q + &one);
        assert!(q.exact_divide(&q).unwrap().is_one());
        assert_eq!(q.exact_divide(&p), Err(Error::NotDivisible));
        assert_eq!(q.exact_divide(&Polynomial::zero(&c)), Err(Error::DivisionByZero));
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = Polynomial::one(&chart());
        let b = Polynomial::one(&Chart::new(&["x"]).unwrap());
        assert_eq!(a.try_add(&b), Err(Error::ChartMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::ChartMismatch));
    }

    #[test]
    fn printing() {
        let c = chart();
        let p = Polynomial::from_terms(
            &c,
            [(vec![2, 0], int(1)), (vec![0, 1], rat(-3, 2)), (vec![0, 0], int(-4))],
        )
        .unwrap();
        assert_eq!(p.to_text(), "q1^2 - 3/2*p1 - 4");
        assert_eq!((-Polynomial::var(&c, 1).unwrap()).to_text(), "-p1");
        assert_eq!(Polynomial::zero(&c).to_text(), "0");
    }
}
