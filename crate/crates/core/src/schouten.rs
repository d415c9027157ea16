//! Schouten–Nijenhuis bracket of multivector fields and the structure
//! tests built on it.
//!
//! Writing a multivector as a polynomial in odd symbols `ξ_i = ∂_i` and
//! letting `H(A, B) = Σ_i ∂^R_{ξ_i} A ∧ ∂_{x_i} B`, where `∂^R_{ξ_i}` strips
//! `∂_i` from the right end of each basis element, the bracket is
//!
//! ```text
//! [A, B] = (−1)^{(a−1)(b−1)} H(A, B) − H(B, A)
//! ```
//!
//! It satisfies `[X, f] = X(f)`, agrees with the Lie bracket on vector
//! fields, is graded antisymmetric, `[A,B] = −(−1)^{(a−1)(b−1)}[B,A]`, and
//! obeys `[A, B∧C] = (−1)^{(a−1)c}[A,B]∧C + B∧[A,C]`. With this sign the
//! volume-form identity for bivectors holds exactly and a Jacobi pair reads
//! `[Λ,Λ] = 2X∧Λ`.

use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Multivector};
use crate::polyring::ensure_same;

/// `Σ_i ∂^R_{ξ_i} A ∧ ∂_{x_i} B`.
fn half_bracket(a: &Multivector, b: &Multivector) -> Multivector {
    let chart = a.chart();
    let dim = chart.dim();
    let mut out = Multivector::zero(chart, (a.grade() + b.grade()).saturating_sub(1));
    if a.grade() == 0 {
        return out;
    }
    for i in 0..dim {
        let stripped: Vec<(Blade, _)> = a
            .terms()
            .filter(|(blade, _)| blade.contains(i))
            .map(|(blade, c)| {
                let above = blade.grade() as u32 - blade.count_below(i) - 1;
                let c = if above % 2 == 1 { -c } else { c.clone() };
                (blade.without(Blade::single(i)), c)
            })
            .collect();
        if stripped.is_empty() {
            continue;
        }
        let db = b.map_coefficients(|c| c.partial_unchecked(i));
        if db.is_zero() {
            continue;
        }
        for (sb, sc) in &stripped {
            for (bb, bc) in db.terms() {
                if let Some((neg, nb)) = sb.merge(bb) {
                    let c = sc * bc;
                    out.push(nb, if neg { -c } else { c });
                }
            }
        }
    }
    out
}

/// Schouten–Nijenhuis bracket `[A, B]`, of grade `a + b − 1`.
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    ensure_same(a.chart(), b.chart())?;
    if a.grade() == 0 && b.grade() == 0 {
        return Ok(Multivector::zero(a.chart(), 0));
    }
    let first = half_bracket(a, b);
    let second = half_bracket(b, a);
    let odd = (a.grade() + 1) * (b.grade() + 1) % 2 == 1;
    if odd {
        first.neg().try_sub(&second)
    } else {
        first.try_sub(&second)
    }
}

fn expect_grade(mv: &Multivector, grade: usize, what: &str) -> Result<()> {
    if mv.grade() == grade {
        Ok(())
    } else {
        Err(Error::GradeMismatch(format!("{what} must have grade {grade}, got {}", mv.grade())))
    }
}

/// `[Λ, Λ] = 0` for a bivector.
pub fn is_poisson(lambda: &Multivector) -> Result<bool> {
    expect_grade(lambda, 2, "a Poisson tensor")?;
    Ok(schouten(lambda, lambda)?.is_zero())
}

/// `[Λ, Λ] = 0` for an even-grade multivector.
pub fn is_n_poisson(lambda: &Multivector) -> Result<bool> {
    if !lambda.grade().is_multiple_of(2) {
        return Err(Error::GradeMismatch(format!(
            "generalized Poisson tensors have even grade, got {}",
            lambda.grade()
        )));
    }
    Ok(schouten(lambda, lambda)?.is_zero())
}

fn check_volume(volume: &Form) -> Result<()> {
    let dim = volume.chart().dim();
    if volume.grade() != dim {
        return Err(Error::GradeMismatch(format!(
            "a volume form has grade {dim}, got {}",
            volume.grade()
        )));
    }
    if volume.is_zero() {
        return Err(Error::Degenerate("volume form is zero".into()));
    }
    Ok(())
}

/// `d i_{Λ∧Λ} Ω = 2 i_Λ d i_Λ Ω`.
pub fn volume_poisson_criterion(lambda: &Multivector, volume: &Form) -> Result<bool> {
    expect_grade(lambda, 2, "the bivector")?;
    ensure_same(lambda.chart(), volume.chart())?;
    check_volume(volume)?;
    let lhs = volume.contract(&lambda.wedge(lambda)?)?.exterior_derivative();
    let rhs = volume
        .contract(lambda)?
        .exterior_derivative()
        .contract(lambda)?
        .scale_rational(&crate::polyring::int(2));
    Ok(lhs == rhs)
}

/// Both sides of
/// `i_{[Λ1,Λ2]}Ω = −i_{Λ1} i_{Λ2} dΩ − d i_{Λ2∧Λ1} Ω + i_{Λ1} d i_{Λ2} Ω + i_{Λ2} d i_{Λ1} Ω`.
pub fn schouten_volume_identity_sides(
    l1: &Multivector,
    l2: &Multivector,
    volume: &Form,
) -> Result<(Form, Form)> {
    expect_grade(l1, 2, "Λ1")?;
    expect_grade(l2, 2, "Λ2")?;
    ensure_same(l1.chart(), volume.chart())?;
    check_volume(volume)?;
    let lhs = volume.contract(&schouten(l1, l2)?)?;
    let d_volume = volume.exterior_derivative();
    let rhs = d_volume
        .contract(l2)?
        .contract(l1)?
        .neg()
        .try_sub(&volume.contract(&l2.wedge(l1)?)?.exterior_derivative())?
        .try_add(&volume.contract(l2)?.exterior_derivative().contract(l1)?)?
        .try_add(&volume.contract(l1)?.exterior_derivative().contract(l2)?)?;
    Ok((lhs, rhs))
}

pub fn schouten_volume_identity_check(
    l1: &Multivector,
    l2: &Multivector,
    volume: &Form,
) -> Result<bool> {
    let (lhs, rhs) = schouten_volume_identity_sides(l1, l2, volume)?;
    Ok(lhs == rhs)
}

/// `[X, Λ] = 0` and `[Λ, Λ] = 2 X ∧ Λ`.
pub fn jacobi_pair_check(lambda: &Multivector, x: &Multivector) -> Result<bool> {
    expect_grade(lambda, 2, "Λ")?;
    expect_grade(x, 1, "X")?;
    ensure_same(lambda.chart(), x.chart())?;
    if !schouten(x, lambda)?.is_zero() {
        return Ok(false);
    }
    let rhs = x.wedge(lambda)?.scale_rational(&crate::polyring::int(2));
    Ok(schouten(lambda, lambda)? == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_multivector;
    use crate::polyring::{Chart, Polynomial};

    #[test]
    fn vector_field_cases() {
        let c = Chart::darboux(1).unwrap();
        let dq = parse_multivector("e(q1)", &c).unwrap();
        let dp = parse_multivector("e(p1)", &c).unwrap();
        assert!(schouten(&dq, &dp).unwrap().is_zero());
        let qdp = parse_multivector("q1*e(p1)", &c).unwrap();
        assert_eq!(schouten(&dq, &qdp).unwrap(), dp);
        let f = Multivector::scalar(parse_multivector("q1^2*p1", &c).unwrap().as_scalar().unwrap());
        let xf = schouten(&dq, &f).unwrap();
        assert_eq!(xf.as_scalar().unwrap().to_text(), "2*q1*p1");
    }

    #[test]
    fn standard_bivector_is_poisson() {
        let c = Chart::darboux(2).unwrap();
        let lam = parse_multivector("e(p1)^e(q1) + e(p2)^e(q2)", &c).unwrap();
        assert!(schouten(&lam, &lam).unwrap().is_zero());
        assert!(is_poisson(&lam).unwrap());
        assert!(is_n_poisson(&lam.wedge(&lam).unwrap()).unwrap());
        assert!(is_n_poisson(&parse_multivector("e(q1)", &c).unwrap()).is_err());
    }

    #[test]
    fn scalar_scalar_is_zero() {
        let c = Chart::new(&["x"]).unwrap();
        let x = Multivector::scalar(Polynomial::var(&c, 0).unwrap());
        assert!(schouten(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn jacobi_pairs() {
        let c = Chart::new(&["x", "y", "z"]).unwrap();
        let x = parse_multivector("e(z)", &c).unwrap();
        assert!(jacobi_pair_check(&Multivector::zero(&c, 2), &x).unwrap());
        let lam = parse_multivector("e(x)^e(y)", &c).unwrap();
        assert!(!jacobi_pair_check(&lam, &x).unwrap());
        let contact = parse_multivector("(e(x) + y*e(z))^e(y)", &c).unwrap();
        assert!(jacobi_pair_check(&contact, &x).unwrap());
    }
}
