//! Worked examples for each public operation.

use npoisson::brackets::{
    derived_vf, hamiltonian_vf, homogenization_check, jacobi_bracket, jacobiator, nambu_top_bracket,
    omega_power_bracket, omega_power_bracket_def, BracketDef, JacobiDef,
};
use npoisson::dirac::{dirac_bracket_form, dirac_bracket_matrix, regularity_check, ConstraintSet};
use npoisson::exterior::{
    mv_from_form, parse_form, parse_multivector, poisson_bivector, Form, Multivector,
    SymplecticData,
};
use npoisson::models;
use npoisson::polyring::{parse_expr, parse_ratexpr, rat, Chart, ChartRef, ExpPoly, Polynomial, RationalExpr};
use npoisson::Error;

fn darboux(n: usize) -> SymplecticData {
    SymplecticData::darboux(n).unwrap()
}

fn p(chart: &ChartRef, text: &str) -> Polynomial {
    parse_expr(text, chart).unwrap()
}

#[test]
fn polynomial_arithmetic() {
    let c = Chart::darboux(1).unwrap();
    assert_eq!(&p(&c, "q1 + p1") + &p(&c, "q1 - p1"), p(&c, "2*q1"));
    assert_eq!(&p(&c, "q1") * &p(&c, "q1"), p(&c, "q1^2"));
    assert_eq!(&p(&c, "q1 + 1") * &p(&c, "q1 - 1"), p(&c, "q1^2 - 1"));
    assert_eq!(p(&c, "q1^2 - 3/2*p1").to_text(), "q1^2 - 3/2*p1");
    assert!(p(&c, "0").is_zero());
    assert_eq!(p(&c, "q1*(q1+1)"), p(&c, "q1^2 + q1"));
}

#[test]
fn partial_derivatives_and_division() {
    let c = Chart::darboux(1).unwrap();
    assert_eq!(p(&c, "q1^2").partial(0).unwrap(), p(&c, "2*q1"));
    assert!(p(&c, "q1^2").partial(1).unwrap().is_zero());
    assert_eq!(p(&c, "q1*p1").partial(1).unwrap(), p(&c, "q1"));
    assert!(matches!(p(&c, "q1").partial(2), Err(Error::IndexOutOfRange { .. })));
    assert_eq!(p(&c, "q1^2 - 1").exact_divide(&p(&c, "q1 - 1")).unwrap(), p(&c, "q1 + 1"));
    assert!(p(&c, "q1").exact_divide(&p(&c, "q1")).unwrap().is_one());
    assert_eq!(p(&c, "q1").exact_divide(&p(&c, "p1")), Err(Error::NotDivisible));
    assert_eq!(p(&c, "q1").exact_divide(&p(&c, "0")), Err(Error::DivisionByZero));
}

#[test]
fn exponential_coefficients() {
    let c = Chart::with_distinguished(&["x", "s"], "s").unwrap();
    let one = Polynomial::one(&c);
    let es = ExpPoly::monomial(1, one.clone()).unwrap();
    assert_eq!(es.mul(&es).unwrap(), ExpPoly::monomial(2, one.clone()).unwrap());
    let f = p(&c, "x^2 + 1");
    let ef = ExpPoly::monomial(1, f.clone()).unwrap();
    assert_eq!(ef.partial(1).unwrap(), ef);
    let back = ExpPoly::exp(&c, -2).unwrap().mul(&es.mul(&es).unwrap()).unwrap();
    assert_eq!(back.as_polynomial(), Some(one));
}

#[test]
fn rational_expressions() {
    let c = Chart::darboux(1).unwrap();
    let a = parse_ratexpr("q1/(q1*p1)", &c).unwrap();
    let b = parse_ratexpr("1/p1", &c).unwrap();
    assert_eq!(a, b);
    assert!(RationalExpr::new(p(&c, "1"), p(&c, "0")).is_err());
}

#[test]
fn wedge_power_and_derivative() {
    let s = darboux(2);
    let c = s.chart();
    assert_eq!(
        s.omega().power(2),
        parse_form("2*d(p1)^d(q1)^d(p2)^d(q2)", c).unwrap()
    );
    assert!(s.omega().power(3).is_zero());
    assert_eq!(
        parse_form("q1*d(p1)", c).unwrap().exterior_derivative(),
        parse_form("d(q1)^d(p1)", c).unwrap()
    );
    let f = p(c, "q1^2*p2 - 3*q2*p1");
    assert!(Form::differential(&f).exterior_derivative().is_zero());
}

#[test]
fn contraction_and_pairing() {
    let s = darboux(2);
    let c = s.chart();
    let lam = s.poisson();
    assert_eq!(s.omega().contract(lam).unwrap().as_scalar(), Some(Polynomial::from_int(c, 2)));
    assert_eq!(s.omega().power(2).contract(lam).unwrap(), s.omega().scale_rational(&rat(2, 1)));
    assert_eq!(
        parse_form("d(q1)^d(p1)", c).unwrap().contract(&parse_multivector("e(q1)", c).unwrap()).unwrap(),
        parse_form("d(p1)", c).unwrap()
    );
    let pairing = parse_form("d(q1)^d(q2)", c)
        .unwrap()
        .pair(&parse_multivector("e(q1)^e(q2) + e(p1)^e(p2)", c).unwrap())
        .unwrap();
    assert!(pairing.is_one());
    // {q1, p1} ω = dq1 ∧ dp1 on n = 1.
    let s1 = darboux(1);
    let c1 = s1.chart();
    let qp = s1.poisson_bracket(&p(c1, "q1"), &p(c1, "p1")).unwrap();
    assert_eq!(s1.omega().scale(&qp).unwrap(), parse_form("d(q1)^d(p1)", c1).unwrap());
}

#[test]
fn volume_isomorphism() {
    let s = darboux(2);
    let vol = s.volume().clone();
    assert!(mv_from_form(&vol, &vol).unwrap().as_scalar().unwrap().is_one());
    let alpha = s.omega().clone();
    let lam = mv_from_form(&vol, &alpha).unwrap();
    assert_eq!(lam, *s.poisson());
    assert_eq!(vol.contract(&lam).unwrap(), alpha);
    assert!(mv_from_form(&parse_form("3*d(q1)^d(q2)^d(p1)^d(p2)", s.chart()).unwrap(), &alpha).is_ok());
    let c = s.chart();
    assert!(mv_from_form(&parse_form("q1*d(q1)^d(q2)^d(p1)^d(p2)", c).unwrap(), &alpha).is_err());
}

#[test]
fn poisson_bivector_orientation() {
    let s = darboux(1);
    assert_eq!(*s.poisson(), parse_multivector("e(p1)^e(q1)", s.chart()).unwrap());
    let c = Chart::darboux(3).unwrap();
    let b = models::magnetic_field(&c, ["1", "2", "3"]).unwrap();
    let omega = models::magnetic_form(&c, &b).unwrap();
    let m = omega.two_form_matrix().unwrap();
    assert!(npoisson::polyring::matrix::determinant(&c, &m).is_one());
    let lam = poisson_bivector(&omega).unwrap();
    assert_eq!(lam.evaluate(&[p(&c, "p1"), p(&c, "p2")]).unwrap(), p(&c, "3"));
    assert!(poisson_bivector(&Form::zero(&c, 2)).is_err());
}

#[test]
fn lie_derivatives() {
    let s = darboux(2);
    let c = s.chart();
    let dq1 = parse_multivector("e(q1)", c).unwrap();
    assert_eq!(
        parse_form("q1*d(p1)", c).unwrap().lie_derivative(&dq1).unwrap(),
        parse_form("d(p1)", c).unwrap()
    );
    let xf = hamiltonian_vf(&s, &p(c, "q1^2*p2 + p1*q2 - 2*p2^2")).unwrap();
    assert!(s.omega().lie_derivative(&xf).unwrap().is_zero());
}

#[test]
fn form_defined_brackets() {
    let s = darboux(1);
    let c = s.chart();
    let def = BracketDef::new(s.omega().clone(), Form::scalar(Polynomial::one(c))).unwrap();
    assert!(def.bracket(&[p(c, "p1"), p(c, "q1")]).unwrap().is_one());
    assert!(def.bracket(&[p(c, "1"), p(c, "q1^2")]).unwrap().is_zero());
    let s2 = darboux(2);
    let c2 = s2.chart();
    let def2 = omega_power_bracket_def(&s2, 2).unwrap();
    let f = p(c2, "q1*p2");
    assert!(def2.bracket(&[f.clone(), f, p(c2, "p1"), p(c2, "q2")]).unwrap().is_zero());
    assert!(matches!(def2.bracket(&[p(c2, "q1")]), Err(Error::Arity { .. })));
}

#[test]
fn omega_power_brackets() {
    let s = darboux(2);
    let c = s.chart();
    let args = ["q1", "p1", "q2", "p2"].map(|t| p(c, t));
    assert_eq!(omega_power_bracket(&s, 2, &args).unwrap(), Polynomial::from_int(c, 2));
    for n in 1..=3 {
        let s = darboux(n);
        let c = s.chart();
        for i in 1..=n {
            for j in 1..=n {
                let v = omega_power_bracket(&s, 1, &[p(c, &format!("p{i}")), p(c, &format!("q{j}"))]).unwrap();
                assert_eq!(v, Polynomial::from_int(c, (i == j) as i64));
            }
        }
    }
    let c = Chart::darboux(3).unwrap();
    let b = models::magnetic_field(&c, ["q2", "q3", "q1"]).unwrap();
    let sb = SymplecticData::new(models::magnetic_form(&c, &b).unwrap()).unwrap();
    assert_eq!(omega_power_bracket(&sb, 1, &[p(&c, "p1"), p(&c, "p2")]).unwrap(), b[2]);
    assert!(matches!(omega_power_bracket(&sb, 4, &[]), Err(Error::OutOfRange(_))));
    assert!(matches!(omega_power_bracket(&sb, 1, &[p(&c, "p1")]), Err(Error::Arity { .. })));
}

#[test]
fn nambu_brackets() {
    let c = Chart::new(&["x", "y"]).unwrap();
    let vol = parse_form("d(x)^d(y)", &c).unwrap();
    assert!(nambu_top_bracket(&vol, &Polynomial::one(&c), &[p(&c, "x"), p(&c, "y")]).unwrap().is_one());
    assert_eq!(nambu_top_bracket(&vol, &p(&c, "x"), &[p(&c, "x"), p(&c, "y")]).unwrap(), p(&c, "x"));
    let c3 = Chart::new(&["x", "y", "z"]).unwrap();
    let vol3 = parse_form("2*d(x)^d(y)^d(z)", &c3).unwrap();
    let gamma = p(&c3, "y + 1");
    let odd = [p(&c3, "y"), p(&c3, "x"), p(&c3, "z")];
    assert_eq!(nambu_top_bracket(&vol3, &gamma, &odd).unwrap(), p(&c3, "-1/2*y - 1/2"));
    assert!(matches!(nambu_top_bracket(&vol3, &gamma, &odd[..2]), Err(Error::Arity { .. })));
}

#[test]
fn hamiltonian_and_derived_fields() {
    let s = darboux(1);
    let c = s.chart();
    assert!(hamiltonian_vf(&s, &p(c, "p1")).unwrap().apply(&p(c, "q1")).unwrap().is_one());
    assert!(hamiltonian_vf(&s, &p(c, "7/3")).unwrap().is_zero());
    let s3 = darboux(3);
    let c3 = s3.chart();
    let ps = ["p1", "p2", "p3"].map(|t| p(c3, t));
    assert!(derived_vf(&s3, 2, &ps).unwrap().is_zero());
    assert!(matches!(derived_vf(&s3, 0, &[]), Err(Error::OutOfRange(_))));
    // k = 1 gives the Hamiltonian field.
    let f = p(c3, "q1*p2 - q3^2");
    assert_eq!(derived_vf(&s3, 1, std::slice::from_ref(&f)).unwrap(), hamiltonian_vf(&s3, &f).unwrap());
}

#[test]
fn jacobi_brackets() {
    let (c, lam, x) = models::contact_pair(false).unwrap();
    let def = JacobiDef::new(lam, x).unwrap();
    assert!(def.is_jacobi());
    assert!(jacobi_bracket(&def, &p(&c, "x"), &p(&c, "y")).unwrap().is_one());
    assert_eq!(jacobi_bracket(&def, &p(&c, "x"), &p(&c, "z")).unwrap(), p(&c, "x"));
    assert!(jacobi_bracket(&def, &p(&c, "y"), &p(&c, "z")).unwrap().is_zero());
    let f = p(&c, "x*z + y");
    assert!(jacobi_bracket(&def, &f, &f).unwrap().is_zero());
    let s = darboux(1);
    let std = JacobiDef::new(s.poisson().clone(), Multivector::zero(s.chart(), 1)).unwrap();
    let (f, g) = (p(s.chart(), "q1^2*p1"), p(s.chart(), "p1 + q1"));
    assert_eq!(jacobi_bracket(&std, &f, &g).unwrap(), s.poisson_bracket(&f, &g).unwrap());
}

#[test]
fn homogenization() {
    let (c, lam, x) = models::contact_pair(true).unwrap();
    let def = JacobiDef::new(lam, x).unwrap();
    let one = Polynomial::one(&c);
    assert!(homogenization_check(&def, &one, &one).unwrap());
    assert!(homogenization_check(&def, &p(&c, "x^2 + z"), &p(&c, "y*z - 1")).unwrap());
    let zero = JacobiDef::new(Multivector::zero(&c, 2), Multivector::zero(&c, 1)).unwrap();
    assert!(homogenization_check(&zero, &p(&c, "x"), &p(&c, "y")).unwrap());
}

#[test]
fn jacobiators() {
    let s = darboux(2);
    let c = s.chart();
    let fs = ["q1*p2", "p1^2 + q2", "q1*q2*p1"].map(|t| p(c, t));
    assert!(jacobiator(&s, &fs[0], &fs[1], &fs[2]).unwrap().is_zero());
    let c = Chart::darboux(3).unwrap();
    let ps: Vec<_> = ["p1", "p2", "p3"].iter().map(|t| p(&c, t)).collect();
    let good = poisson_bivector(&models::magnetic_form(&c, &models::magnetic_field(&c, ["q2", "q3", "q1"]).unwrap()).unwrap()).unwrap();
    assert!(jacobiator(&good, &ps[0], &ps[1], &ps[2]).unwrap().is_zero());
    let bad = poisson_bivector(&models::magnetic_form(&c, &models::magnetic_field(&c, ["q1", "0", "0"]).unwrap()).unwrap()).unwrap();
    // Frozen: with {p_i, p_j} = ε_ijk B^k the cyclic sum is +div B.
    assert!(jacobiator(&bad, &ps[0], &ps[1], &ps[2]).unwrap().is_one());
}

#[test]
fn dirac_examples() {
    let s = darboux(2);
    let c = s.chart();
    let set = |ts: &[&str]| ConstraintSet::new(&s, ts.iter().map(|t| p(c, t)).collect()).unwrap();
    assert!(regularity_check(&set(&["q2", "p2"])));
    assert!(!regularity_check(&set(&["q2", "q1"])));
    let s1 = darboux(1);
    let reg = ConstraintSet::new(&s1, vec![p(s1.chart(), "q1"), p(s1.chart(), "q1*p1")]).unwrap();
    assert!(regularity_check(&reg));
    assert_eq!(reg.det(), &p(s1.chart(), "q1^2"));
    assert!(ConstraintSet::new(&s, vec![p(c, "q1")]).is_err());

    let canon = set(&["q2", "p2"]);
    let (q1, p1) = (p(c, "q1"), p(c, "p1"));
    let plain = RationalExpr::from_poly(s.poisson_bracket(&q1, &p1).unwrap());
    assert_eq!(dirac_bracket_matrix(&canon, &q1, &p1).unwrap(), plain);
    assert_eq!(dirac_bracket_form(&canon, &q1, &p1).unwrap(), plain);
    assert!(dirac_bracket_form(&canon, &q1, &q1).unwrap().is_zero());
    assert!(dirac_bracket_form(&canon, &p(c, "q2"), &p1).unwrap().is_zero());
    let shifted = set(&["q2", "p2 - q1"]);
    assert!(dirac_bracket_matrix(&shifted, &p1, &p(c, "p2")).unwrap() == RationalExpr::from_poly(Polynomial::one(c)));
    let f = p(c, "q1*p1 + p2^2");
    for t in shifted.thetas() {
        assert!(dirac_bracket_matrix(&shifted, t, &f).unwrap().is_zero());
    }
    let s3 = darboux(3);
    let full = ConstraintSet::new(&s3, models::canonical_constraints(s3.chart(), 3, 0).unwrap()).unwrap();
    assert!(dirac_bracket_form(&full, &p(s3.chart(), "q1"), &p(s3.chart(), "p1")).is_err());
}
