//! Concrete structures used throughout the tests and examples: the
//! magnetic symplectic form on `T*R³`, angular momentum, and the contact
//! Jacobi pair on `R³`.

use crate::error::{Error, Result};
use crate::exterior::{darboux_form, parse_multivector, Form, Multivector};
use crate::polyring::{ensure_same, Chart, ChartRef, Polynomial};

/// `ε_{ijk}` for indices in `0..3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `ω_B = Σ dp_j∧dq_j − (B¹ dq2∧dq3 + B² dq3∧dq1 + B³ dq1∧dq2)` on the
/// Darboux chart `q1 q2 q3 p1 p2 p3`, so that `{p_i, p_j} = ε_{ijk} B^k`.
///
/// Closed exactly when `div B = 0` and `B` depends on `q` only; the form is
/// returned either way so that the failure of the Jacobi identity can be
/// observed.
pub fn magnetic_form(chart: &ChartRef, b: &[Polynomial; 3]) -> Result<Form> {
    if chart.dim() != 6 {
        return Err(Error::InvalidChart(format!(
            "the magnetic form lives on a 6-dimensional chart, got {}",
            chart.dim()
        )));
    }
    let mut omega = darboux_form(chart, 3)?;
    for (i, bi) in b.iter().enumerate() {
        ensure_same(chart, bi.chart())?;
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        omega = omega.try_sub(&Form::basis(chart, &[j, k], bi.clone())?)?;
    }
    Ok(omega)
}

/// Parses three field components on the Darboux chart of `T*R³`.
pub fn magnetic_field(chart: &ChartRef, components: [&str; 3]) -> Result<[Polynomial; 3]> {
    let [a, b, c] = components.map(|t| crate::polyring::parse_expr(t, chart));
    Ok([a?, b?, c?])
}

/// `div B = Σ ∂B^i/∂q_i`.
pub fn divergence(b: &[Polynomial; 3]) -> Polynomial {
    let chart = b[0].chart();
    (0..3).fold(Polynomial::zero(chart), |acc, i| &acc + &b[i].partial_unchecked(i))
}

/// `B^i ∂/∂q_i`.
pub fn field_along_q(b: &[Polynomial; 3]) -> Result<Multivector> {
    let chart = b[0].chart();
    let mut comps: Vec<Polynomial> = b.to_vec();
    comps.extend((0..3).map(|_| Polynomial::zero(chart)));
    Multivector::vector_field(chart, comps)
}

/// `J_i = ε_{ijk} q_j p_k` on the Darboux chart of `T*R³`.
pub fn angular_momentum(chart: &ChartRef) -> Result<[Polynomial; 3]> {
    if chart.dim() != 6 {
        return Err(Error::InvalidChart("angular momentum needs the chart q1 q2 q3 p1 p2 p3".into()));
    }
    let q = |j| Polynomial::var(chart, j);
    let p = |k| Polynomial::var(chart, 3 + k);
    let mut out = [Polynomial::zero(chart), Polynomial::zero(chart), Polynomial::zero(chart)];
    for (i, slot) in out.iter_mut().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        *slot = &(&q(j)? * &p(k)?) - &(&q(k)? * &p(j)?);
    }
    Ok(out)
}

/// `J_1² + J_2² + J_3²`.
pub fn casimir(j: &[Polynomial; 3]) -> Polynomial {
    j.iter().fold(Polynomial::zero(j[0].chart()), |acc, ji| &acc + &ji.pow(2))
}

/// The chart `x y z` (plus `s` when `homogeneous`) with
/// `Λ = (∂x + y∂z)∧∂y` and `X = ∂z`.
pub fn contact_pair(homogeneous: bool) -> Result<(ChartRef, Multivector, Multivector)> {
    let chart = if homogeneous {
        Chart::with_distinguished(&["x", "y", "z", "s"], "s")?
    } else {
        Chart::new(&["x", "y", "z"])?
    };
    let lambda = parse_multivector("(e(x) + y*e(z))^e(y)", &chart)?;
    let x = parse_multivector("e(z)", &chart)?;
    Ok((chart, lambda, x))
}

/// Canonical second-class constraints `q_j, p_j` for `j > r` on the
/// `2n`-dimensional Darboux chart.
pub fn canonical_constraints(chart: &ChartRef, n: usize, r: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for j in r..n {
        out.push(Polynomial::var(chart, j)?);
        out.push(Polynomial::var(chart, n + j)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{derived_vf, hamiltonian_vf, jacobiator, omega_power_bracket};
    use crate::exterior::{poisson_bivector, SymplecticData};
    use crate::polyring::rat;
    use num_traits::Signed;

    fn chart() -> ChartRef {
        Chart::darboux(3).unwrap()
    }

    #[test]
    fn magnetic_brackets_and_fields() {
        let c = chart();
        for comps in [["2", "-1", "3/2"], ["q2", "q3", "q1"]] {
            let b = magnetic_field(&c, comps).unwrap();
            let s = SymplecticData::new(magnetic_form(&c, &b).unwrap()).unwrap();
            assert_eq!(s.omega_power(3), SymplecticData::darboux(3).unwrap().omega_power(3));
            let p = |i: usize| Polynomial::var(&c, 3 + i).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let expect = (0..3).fold(Polynomial::zero(&c), |acc, k| {
                        &acc + &b[k].scale(&rat(levi_civita(i, j, k), 1))
                    });
                    assert_eq!(omega_power_bracket(&s, 1, &[p(i), p(j)]).unwrap(), expect);
                }
            }
            let x = derived_vf(&s, 2, &[p(0), p(1), p(2)]).unwrap();
            assert_eq!(x, field_along_q(&b).unwrap());
        }
    }

    #[test]
    fn divergence_controls_jacobi() {
        let c = chart();
        let p: Vec<_> = (3..6).map(|i| Polynomial::var(&c, i).unwrap()).collect();
        let good = magnetic_field(&c, ["q2", "q3", "q1"]).unwrap();
        let lam = poisson_bivector(&magnetic_form(&c, &good).unwrap()).unwrap();
        assert!(jacobiator(&lam, &p[0], &p[1], &p[2]).unwrap().is_zero());
        let bad = magnetic_field(&c, ["q1", "0", "0"]).unwrap();
        assert!(SymplecticData::new(magnetic_form(&c, &bad).unwrap()).is_err());
        let lam = poisson_bivector(&magnetic_form(&c, &bad).unwrap()).unwrap();
        let j = jacobiator(&lam, &p[0], &p[1], &p[2]).unwrap();
        assert!(j.is_constant() && !j.is_zero(), "{j}");
        assert_eq!(j.constant_value().unwrap().abs(), rat(1, 1));
    }

    #[test]
    fn so3_casimir_field() {
        let c = chart();
        let s = SymplecticData::darboux(3).unwrap();
        let j = angular_momentum(&c).unwrap();
        let x = derived_vf(&s, 2, &j).unwrap();
        let xc = hamiltonian_vf(&s, &casimir(&j)).unwrap();
        let ratio = crate::brackets::proportionality(&x, &xc).expect("proportional");
        assert_eq!(ratio.abs(), rat(1, 2));
    }
}
