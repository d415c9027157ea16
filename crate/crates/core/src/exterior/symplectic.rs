use std::sync::OnceLock;

use num_traits::Zero;

use super::blade::Blade;
use super::graded::{poisson_bivector, Form, Multivector};
use crate::error::{Error, Result};
use crate::polyring::{int, Chart, ChartRef, Polynomial, Rational};

/// A closed nondegenerate 2-form with constant determinant, its Poisson
/// bivector and cached wedge powers.
#[derive(Debug, Clone)]
pub struct SymplecticData {
    omega: Form,
    poisson: Multivector,
    half_dim: usize,
    omega_powers: Vec<Form>,
    volume: Form,
}

impl SymplecticData {
    pub fn new(omega: Form) -> Result<Self> {
        check_conventions()?;
        let chart = omega.chart().clone();
        let m = chart.dim();
        if omega.grade() != 2 {
            return Err(Error::GradeMismatch(format!(
                "a symplectic form has grade 2, got {}",
                omega.grade()
            )));
        }
        if !m.is_multiple_of(2) {
            return Err(Error::Degenerate(format!("odd dimension {m}")));
        }
        if !omega.exterior_derivative().is_zero() {
            return Err(Error::Degenerate("the 2-form is not closed".into()));
        }
        let poisson = poisson_bivector(&omega)?;
        let n = m / 2;
        let trace = omega.contract(&poisson)?.as_scalar().expect("grade 0");
        if trace != Polynomial::from_int(&chart, n as i64) {
            return Err(Error::Inconsistent(format!(
                "i_Λ ω = {trace}, expected {n}"
            )));
        }
        let omega_powers: Vec<Form> = (0..=n).map(|k| omega.power(k)).collect();
        let volume = omega_powers[n].scale_rational(&(Rational::from_integer(1.into()) / factorial(n)));
        Ok(SymplecticData { omega, poisson, half_dim: n, omega_powers, volume })
    }

    /// `Σ_j dp_j ∧ dq_j` on the Darboux chart `q1..qn, p1..pn`.
    pub fn darboux(n: usize) -> Result<Self> {
        let chart = Chart::darboux(n)?;
        Self::new(darboux_form(&chart, n)?)
    }

    pub fn chart(&self) -> &ChartRef {
        self.omega.chart()
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn poisson(&self) -> &Multivector {
        &self.poisson
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    /// `ω^k` for `0 ≤ k ≤ n`.
    pub fn omega_power(&self, k: usize) -> Form {
        self.omega_powers
            .get(k)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.chart(), 2 * k))
    }

    /// `ω^n / n!`.
    pub fn volume(&self) -> &Form {
        &self.volume
    }

    /// `{f, g} = ⟨df ∧ dg, Λ⟩`.
    pub fn poisson_bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.poisson.evaluate(&[f.clone(), g.clone()])
    }
}

/// `Σ dp_j ∧ dq_j` on a chart whose first `n` coordinates are `q` and last
/// `n` are `p`.
pub fn darboux_form(chart: &ChartRef, n: usize) -> Result<Form> {
    let mut omega = Form::zero(chart, 2);
    for j in 0..n {
        omega = omega.try_add(&Form::basis(chart, &[n + j, j], Polynomial::one(chart))?)?;
    }
    Ok(omega)
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// Checks, once per process, that contraction and pairing satisfy
/// `⟨dx_I, Λ⟩ Ω = dx_I ∧ i_Λ Ω` on every basis pair of a 4-dimensional
/// reference chart.
pub fn check_conventions() -> Result<()> {
    static RESULT: OnceLock<Result<()>> = OnceLock::new();
    RESULT.get_or_init(reference_pairing_identity).clone()
}

fn reference_pairing_identity() -> Result<()> {
    let chart = Chart::new(&["x1", "x2", "x3", "x4"])?;
    let one = Polynomial::one(&chart);
    let volume = Form::basis(&chart, &[0, 1, 2, 3], one.clone())?;
    for i in 0u32..16 {
        for j in (0u32..16).filter(|j| j.count_ones() == i.count_ones()) {
            let k = i.count_ones() as usize;
            let a = Form::from_blades(&chart, k, [(Blade(i), one.clone())]);
            let l = Multivector::from_blades(&chart, k, [(Blade(j), one.clone())]);
            let lhs = volume.scale(&a.pair(&l)?)?;
            let rhs = a.wedge(&volume.contract(&l)?)?;
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "pairing/contraction mismatch on blades {i:04b}, {j:04b}"
                )));
            }
        }
    }
    Ok(())
}

impl SymplecticData {
    /// Determinant-free check that the cached volume is a nonzero constant.
    pub fn volume_constant(&self) -> Rational {
        let c = self.volume.volume_constant().expect("validated at construction");
        debug_assert!(!c.is_zero());
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions_hold() {
        check_conventions().unwrap();
    }

    #[test]
    fn darboux_data() {
        for n in 1..=3 {
            let s = SymplecticData::darboux(n).unwrap();
            assert_eq!(s.volume_constant(), sign_of_volume(n));
            let q = Polynomial::var(s.chart(), 0).unwrap();
            let p = Polynomial::var(s.chart(), n).unwrap();
            assert!(s.poisson_bracket(&p, &q).unwrap().is_one());
        }
    }

    // ω^n/n! = Π dp_j∧dq_j; reordering to dq1..dqn dp1..dpn gives this sign.
    fn sign_of_volume(n: usize) -> Rational {
        let chart = Chart::darboux(n).unwrap();
        let mut idx = Vec::new();
        for j in 0..n {
            idx.push(n + j);
            idx.push(j);
        }
        let f = Form::basis(&chart, &idx, Polynomial::one(&chart)).unwrap();
        f.top_coefficient().constant_value().unwrap()
    }

    #[test]
    fn rejects_bad_forms() {
        let c = Chart::new(&["x", "y", "z"]).unwrap();
        assert!(SymplecticData::new(Form::basis_named(&c, &["x", "y"]).unwrap()).is_err());
        let c = Chart::darboux(1).unwrap();
        let q = Polynomial::var(&c, 0).unwrap();
        let nonconst = Form::basis(&c, &[1, 0], &q + &Polynomial::one(&c)).unwrap();
        assert!(matches!(SymplecticData::new(nonconst), Err(Error::Degenerate(_))));
    }
}
