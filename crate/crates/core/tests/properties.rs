//! Algebraic invariants on seeded random inputs.

use proptest::prelude::*;

use npoisson::brackets::{hamiltonian_vf, jacobiator, BinaryBracket};
use npoisson::dirac::{dirac_bracket_form, dirac_bracket_matrix, ConstraintSet};
use npoisson::exterior::{mv_from_form, parse_form, parse_multivector, Form, Multivector, SymplecticData};
use npoisson::polyring::{parse_expr, Chart, ChartRef, Polynomial, RationalExpr};
use npoisson::random::{self, SuiteRng};
use npoisson::schouten::schouten;

fn chart4() -> ChartRef {
    Chart::darboux(2).unwrap()
}

fn poly(rng: &mut SuiteRng, c: &ChartRef) -> Polynomial {
    random::polynomial(rng, c)
}

fn form(rng: &mut SuiteRng, c: &ChartRef, k: usize) -> Form {
    random::graded(rng, c, k, 2, 3)
}

fn mv(rng: &mut SuiteRng, c: &ChartRef, k: usize) -> Multivector {
    random::graded(rng, c, k, 2, 3)
}

fn sign(odd: bool) -> Polynomial {
    Polynomial::from_int(&chart4(), if odd { -1 } else { 1 })
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (a, b, d) = (poly(&mut r, &c), poly(&mut r, &c), poly(&mut r, &c));
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn mixed_partials_commute(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let f = random::polynomial_in(&mut r, &c, &[0, 1, 2, 3], 4, 5);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(
                    f.partial(i).unwrap().partial(j).unwrap(),
                    f.partial(j).unwrap().partial(i).unwrap()
                );
            }
        }
    }

    #[test]
    fn exact_division_inverts_product(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (a, b) = (poly(&mut r, &c), poly(&mut r, &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }
    }

    #[test]
    fn quotient_equivalence(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (a, b, k) = (poly(&mut r, &c), poly(&mut r, &c), poly(&mut r, &c));
        if !b.is_zero() && !k.is_zero() {
            let x = RationalExpr::new(a.clone(), b.clone()).unwrap();
            let y = RationalExpr::new(&a * &k, &b * &k).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert!(x.sub(&y).unwrap().is_zero());
        }
    }

    #[test]
    fn text_round_trip(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let f = poly(&mut r, &c);
        prop_assert_eq!(parse_expr(&f.to_text(), &c).unwrap(), f);
        // A printed zero carries no grade.
        let a = form(&mut r, &c, 2);
        let back = parse_form(&a.to_text(), &c).unwrap();
        prop_assert!(back == a || (back.is_zero() && a.is_zero()));
        let m = mv(&mut r, &c, 1);
        let back = parse_multivector(&m.to_text(), &c).unwrap();
        prop_assert!(back == m || (back.is_zero() && m.is_zero()));
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (a, b, d) = (form(&mut r, &c, 1), form(&mut r, &c, 2), form(&mut r, &c, 1));
        prop_assert_eq!(
            a.wedge(&b).unwrap().wedge(&d).unwrap(),
            a.wedge(&b.wedge(&d).unwrap()).unwrap()
        );
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(a.wedge(&d).unwrap(), d.wedge(&a).unwrap().neg());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative_laws(seed: u64) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (a, b) = (form(&mut r, &c, 1), form(&mut r, &c, 2));
        prop_assert!(a.exterior_derivative().exterior_derivative().is_zero());
        prop_assert!(b.exterior_derivative().exterior_derivative().is_zero());
        let lhs = a.wedge(&b).unwrap().exterior_derivative();
        let rhs = a.exterior_derivative().wedge(&b).unwrap()
            .try_sub(&a.wedge(&b.exterior_derivative()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let x = mv(&mut r, &c, 1);
        prop_assert_eq!(
            b.lie_derivative(&x).unwrap().exterior_derivative(),
            b.exterior_derivative().lie_derivative(&x).unwrap()
        );
    }

    #[test]
    fn volume_isomorphism_round_trip(seed: u64, k in 0usize..=4) {
        let c = chart4();
        let mut r = random::rng(seed);
        let scale = random::coefficient(&mut r);
        let vol = parse_form("d(q1)^d(q2)^d(p1)^d(p2)", &c).unwrap().scale_rational(&scale);
        let a = form(&mut r, &c, k);
        let m = mv_from_form(&vol, &a).unwrap();
        prop_assert_eq!(m.grade(), 4 - k);
        prop_assert_eq!(vol.contract(&m).unwrap(), a);
    }

    #[test]
    fn schouten_graded_antisymmetry(seed: u64, a in 1usize..=2, b in 1usize..=2) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (x, y) = (mv(&mut r, &c, a), mv(&mut r, &c, b));
        let odd = (a - 1) * (b - 1) % 2 == 1;
        let flipped = schouten(&y, &x).unwrap();
        let expected = if odd { flipped } else { flipped.neg() };
        prop_assert_eq!(schouten(&x, &y).unwrap(), expected);
    }

    #[test]
    fn schouten_leibniz(seed: u64, a in 1usize..=2) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (x, y, z) = (mv(&mut r, &c, a), mv(&mut r, &c, 1), mv(&mut r, &c, 1));
        // [A, B∧C] = (−1)^{(a−1)c}[A,B]∧C + B∧[A,C] with b = c = 1.
        let lhs = schouten(&x, &y.wedge(&z).unwrap()).unwrap();
        let first = schouten(&x, &y).unwrap().wedge(&z).unwrap();
        let first = if (a - 1) % 2 == 1 { first.neg() } else { first };
        let rhs = first.try_add(&y.wedge(&schouten(&x, &z).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(seed: u64, a in 1usize..=2, b in 1usize..=2, d in 1usize..=2) {
        let c = chart4();
        let mut r = random::rng(seed);
        let (x, y, z) = (mv(&mut r, &c, a), mv(&mut r, &c, b), mv(&mut r, &c, d));
        let term = |p: &Multivector, q: &Multivector, s: &Multivector, gp: usize, gs: usize| {
            let t = schouten(p, &schouten(q, s).unwrap()).unwrap();
            t.scale(&sign((gp - 1) * (gs - 1) % 2 == 1)).unwrap()
        };
        let total = term(&x, &y, &z, a, d)
            .try_add(&term(&y, &z, &x, b, a)).unwrap()
            .try_add(&term(&z, &x, &y, d, b)).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn symplectic_bracket_laws(seed: u64) {
        let s = SymplecticData::darboux(2).unwrap();
        let c = s.chart().clone();
        let mut r = random::rng(seed);
        let (f, g, h) = (poly(&mut r, &c), poly(&mut r, &c), poly(&mut r, &c));
        let fg = s.poisson_bracket(&f, &g).unwrap();
        prop_assert_eq!(&fg, &-s.poisson_bracket(&g, &f).unwrap());
        prop_assert_eq!(
            s.poisson_bracket(&f, &(&g * &h)).unwrap(),
            &(&fg * &h) + &(&g * &s.poisson_bracket(&f, &h).unwrap())
        );
        prop_assert!(jacobiator(&s, &f, &g, &h).unwrap().is_zero());
        let xf = hamiltonian_vf(&s, &f).unwrap();
        prop_assert!(s.omega().lie_derivative(&xf).unwrap().is_zero());
        prop_assert_eq!(xf.apply(&g).unwrap(), s.bracket2(&f, &g).unwrap());
    }

    #[test]
    fn dirac_antisymmetry(seed: u64) {
        let s = SymplecticData::darboux(2).unwrap();
        let c = s.chart().clone();
        let mut r = random::rng(seed);
        let thetas = vec![parse_expr("q2", &c).unwrap(), parse_expr("p2 - q1^2", &c).unwrap()];
        let set = ConstraintSet::new(&s, thetas).unwrap();
        let (f, g) = (poly(&mut r, &c), poly(&mut r, &c));
        let m = dirac_bracket_matrix(&set, &f, &g).unwrap();
        prop_assert_eq!(&m, &dirac_bracket_matrix(&set, &g, &f).unwrap().neg());
        prop_assert_eq!(&dirac_bracket_form(&set, &f, &g).unwrap(), &m);
    }
}
