//! Seeded generators of small random polynomials and tensors for the
//! identity suites. Everything is reproducible from the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Graded, Variance};
use crate::polyring::{rat, ChartRef, Polynomial, Rational};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero small rational: an integer in `−3..=3`, occasionally halved.
pub fn coefficient(rng: &mut SuiteRng) -> Rational {
    let mut v = 0;
    while v == 0 {
        v = rng.gen_range(-3..=3);
    }
    let d = if rng.gen_bool(0.2) { 2 } else { 1 };
    rat(v, d)
}

/// Up to `max_terms` terms of total degree ≤ `max_degree` in the given
/// coordinates. May be zero or constant.
pub fn polynomial_in(
    rng: &mut SuiteRng,
    chart: &ChartRef,
    coords: &[usize],
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let terms = rng.gen_range(1..=max_terms);
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; chart.dim()];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            if let Some(&i) = coords.choose(rng) {
                exps[i] += 1;
            }
        }
        out.push((exps, coefficient(rng)));
    }
    Polynomial::from_terms(chart, out).expect("exponent vectors match the chart")
}

/// A polynomial of degree ≤ 2 with at most three terms in all coordinates.
pub fn polynomial(rng: &mut SuiteRng, chart: &ChartRef) -> Polynomial {
    let all: Vec<usize> = (0..chart.dim()).collect();
    polynomial_in(rng, chart, &all, 2, 3)
}

/// A non-constant polynomial, retrying as needed.
pub fn nonconstant(rng: &mut SuiteRng, chart: &ChartRef) -> Polynomial {
    loop {
        let p = polynomial(rng, chart);
        if !p.is_constant() {
            return p;
        }
    }
}

/// Random grade-`k` tensor with up to `max_terms` basis terms whose
/// coefficients have degree ≤ `max_degree`.
pub fn graded<V: Variance>(
    rng: &mut SuiteRng,
    chart: &ChartRef,
    grade: usize,
    max_degree: u32,
    max_terms: usize,
) -> Graded<V> {
    let all: Vec<usize> = (0..chart.dim()).collect();
    let terms = rng.gen_range(1..=max_terms);
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut idx: Vec<usize> = all.choose_multiple(rng, grade).copied().collect();
        idx.sort_unstable();
        out.push((idx, polynomial_in(rng, chart, &all, max_degree, 2)));
    }
    Graded::from_terms(chart, grade, out).expect("indices drawn from the chart")
}
