//! Built-in identity suites. Each one exercises a family of exact
//! identities on seeded random or hand-picked inputs and returns a report;
//! the `verify` command and the acceptance target both run these.

use std::fmt;

use crate::brackets::{
    derived_vf, hamiltonian_vf, jacobi_bracket, jacobiator, homogenization_check, omega_power_bracket,
    omega_power_bracket_def, proportionality, BracketDef, JacobiDef,
};
use crate::dirac::{dirac_bracket_form, dirac_bracket_matrix, ConstraintSet};
use crate::error::{Error, Result};
use crate::exterior::{poisson_bivector, Contravariant, Form, Multivector, SymplecticData};
use crate::models;
use crate::polyring::{int, parse_expr, rat, Chart, ChartRef, Polynomial, Rational, RationalExpr};
use crate::random::{self, SuiteRng};
use crate::schouten::{
    is_poisson, jacobi_pair_check, schouten, schouten_volume_identity_check, volume_poisson_criterion,
};

/// Suite names with a one-line description of what `--n` controls.
pub const SUITES: &[(&str, &str)] = &[
    ("contraction", "i_Λ ω^k = k(n−k+1) ω^{k−1}; n = half-dimension (default: 1, 2, 3)"),
    ("pairing", "pairing/contraction consistency on a 4-dim chart; n = samples (default 50)"),
    ("powers", "ω-power brackets vs Λ^k and [Λ^k, Λ^k] = 0; n = max half-dimension (default 3)"),
    ("magnetic", "magnetic symplectic form on T*R³; n = random bracket samples (default 10)"),
    ("divergence", "Jacobi identity vs div B for the magnetic form; n = samples (default 10)"),
    ("xidentity", "X_{f1,f2,f3} = {f1,f2}X_{f3} + cyclic, n = 2 and 3; n = samples (default 20)"),
    ("so3", "X_{J1,J2,J3} is proportional to the Casimir field"),
    ("dirac", "Dirac brackets: calibration, pipelines, Casimirs, reduction; n = samples (default 20)"),
    ("jacobi", "contact Jacobi pair and homogenization; n = samples (default 20)"),
    ("volume", "Poisson criterion and Schouten identity via a volume form; n = samples (default 30)"),
    ("nonderivation", "X_{p1,p2,p3} is not a derivation of the magnetic Poisson bracket"),
];

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Runs `f`; an error counts as a failed check.
    fn attempt(&mut self, label: impl fmt::Display, f: impl FnOnce() -> Result<bool>) {
        match f() {
            Ok(ok) => self.check(ok, || label.to_string()),
            Err(e) => self.check(false, || format!("{label}: {e}")),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "suite {}: {status} ({} checks, {} failed)", self.name, self.checks, self.failures.len())?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  failed: {x}")?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, n: Option<usize>) -> Result<SuiteReport> {
    let report = match name {
        "contraction" => contraction(n),
        "pairing" => pairing(n.unwrap_or(50)),
        "powers" => powers(n.unwrap_or(3)),
        "magnetic" => magnetic(n.unwrap_or(10)),
        "divergence" => divergence(n.unwrap_or(10)),
        "xidentity" => xidentity(n.unwrap_or(20)),
        "so3" => so3(),
        "dirac" => dirac(n.unwrap_or(20)),
        "jacobi" => jacobi(n.unwrap_or(20)),
        "volume" => volume(n.unwrap_or(30)),
        "nonderivation" => nonderivation(),
        _ => return Err(Error::Scenario(format!("unknown suite `{name}`"))),
    };
    Ok(report)
}

fn transfer(p: &Polynomial, chart: &ChartRef) -> Result<Polynomial> {
    parse_expr(&p.to_text(), chart)
}

fn poly(chart: &ChartRef, text: &str) -> Polynomial {
    parse_expr(text, chart).expect("built-in expression")
}

fn contraction(n: Option<usize>) -> SuiteReport {
    let mut r = SuiteReport::new("contraction");
    let ns: Vec<usize> = n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3]);
    let mut structures = Vec::new();
    for &n in &ns {
        match SymplecticData::darboux(n) {
            Ok(s) => structures.push((format!("ω0, n = {n}"), s)),
            Err(e) => r.check(false, || format!("n = {n}: {e}")),
        }
    }
    if ns.contains(&3) {
        let c = Chart::darboux(3).expect("fixed chart");
        let b = models::magnetic_field(&c, ["q2", "q3", "q1"]).expect("fixed field");
        match models::magnetic_form(&c, &b).and_then(SymplecticData::new) {
            Ok(s) => structures.push(("ω_B, B = (q2,q3,q1)".into(), s)),
            Err(e) => r.check(false, || format!("magnetic form: {e}")),
        }
    }
    for (label, s) in &structures {
        let n = s.half_dim();
        for k in 1..=n {
            r.attempt(format!("{label}, k = {k}"), || {
                let lhs = s.omega_power(k).contract(s.poisson())?;
                let rhs = s.omega_power(k - 1).scale_rational(&int((k * (n - k + 1)) as i64));
                Ok(lhs == rhs)
            });
        }
    }
    r
}

fn pairing(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("pairing");
    let chart = Chart::new(&["x1", "x2", "x3", "x4"]).expect("fixed chart");
    let mut rng = random::rng(0x7431);
    for t in 0..samples {
        let k = 1 + t % 4;
        let lam: Multivector = random::graded::<Contravariant>(&mut rng, &chart, k, 2, 3);
        let fs: Vec<Polynomial> = (0..k).map(|_| random::polynomial(&mut rng, &chart)).collect();
        let c = random::coefficient(&mut rng);
        r.attempt(format!("sample {t} (k = {k})"), || {
            let volume = Form::basis(&chart, &[0, 1, 2, 3], Polynomial::constant(&chart, c.clone()))?;
            let dfs = crate::brackets::differentials_wedge(&chart, &fs)?;
            let lhs = volume.scale(&dfs.pair(&lam)?)?;
            let alpha = volume.contract(&lam)?;
            let rhs = dfs.wedge(&alpha)?;
            let def = BracketDef::new(volume, alpha)?;
            Ok(lhs == rhs && def.generator() == &lam && def.bracket(&fs).is_ok())
        });
    }
    r
}

fn random_args(rng: &mut SuiteRng, chart: &ChartRef, count: usize) -> Vec<Polynomial> {
    (0..count).map(|_| random::polynomial(rng, chart)).collect()
}

fn powers(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("powers");
    let mut rng = random::rng(0x7432);
    let mut structures: Vec<(String, SymplecticData)> = Vec::new();
    for n in 1..=max_n {
        match SymplecticData::darboux(n) {
            Ok(s) => structures.push((format!("ω0, n = {n}"), s)),
            Err(e) => r.check(false, || format!("n = {n}: {e}")),
        }
    }
    if max_n >= 3 {
        let c = Chart::darboux(3).expect("fixed chart");
        let b = models::magnetic_field(&c, ["q2", "q3", "q1"]).expect("fixed field");
        if let Ok(s) = models::magnetic_form(&c, &b).and_then(SymplecticData::new) {
            structures.push(("ω_B, B = (q2,q3,q1)".into(), s));
        }
    }
    for (label, s) in &structures {
        for k in 1..=s.half_dim() {
            let lam_k = s.poisson().power(k);
            r.attempt(format!("{label}, k = {k}: generator and [Λ^k, Λ^k] = 0"), || {
                let def = omega_power_bracket_def(s, k)?;
                Ok(def.generator() == &lam_k && schouten(&lam_k, &lam_k)?.is_zero())
            });
            for t in 0..3 {
                let fs = random_args(&mut rng, s.chart(), 2 * k);
                r.attempt(format!("{label}, k = {k}, sample {t}"), || {
                    let b = omega_power_bracket(s, k, &fs)?;
                    let def = omega_power_bracket_def(s, k)?;
                    Ok(b == lam_k.evaluate(&fs)? && b == def.bracket(&fs)?)
                });
            }
        }
    }
    if let Ok(s) = SymplecticData::darboux(2) {
        let args = ["q1", "p1", "q2", "p2"].map(|t| poly(s.chart(), t));
        r.attempt("n = 2: {q1, p1, q2, p2} = 2", || {
            Ok(omega_power_bracket(&s, 2, &args)? == Polynomial::from_int(s.chart(), 2))
        });
    }
    r
}

fn epsilon_combination(b: &[Polynomial; 3], i: usize, j: usize) -> Polynomial {
    (0..3).fold(Polynomial::zero(b[0].chart()), |acc, k| {
        &acc + &b[k].scale(&int(models::levi_civita(i, j, k)))
    })
}

fn magnetic(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("magnetic");
    let chart = Chart::darboux(3).expect("fixed chart");
    let q: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&chart, i).unwrap()).collect();
    let p: Vec<Polynomial> = (3..6).map(|i| Polynomial::var(&chart, i).unwrap()).collect();
    let standard = SymplecticData::darboux(3).expect("Darboux structure");
    let mut rng = random::rng(0x7433);
    for comps in [["2", "-1", "3/2"], ["q2", "q3", "q1"]] {
        let label = format!("B = ({})", comps.join(", "));
        let b = models::magnetic_field(&chart, comps).expect("fixed field");
        let s = match models::magnetic_form(&chart, &b).and_then(SymplecticData::new) {
            Ok(s) => s,
            Err(e) => {
                r.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        r.check(s.omega_power(3) == standard.omega_power(3), || format!("{label}: ω_B³ = ω0³"));
        for i in 0..3 {
            for j in 0..3 {
                r.attempt(format!("{label}: brackets of q{}, p{}", i + 1, j + 1), || {
                    let qq = omega_power_bracket(&s, 1, &[q[i].clone(), q[j].clone()])?;
                    let pq = omega_power_bracket(&s, 1, &[p[i].clone(), q[j].clone()])?;
                    let pp = omega_power_bracket(&s, 1, &[p[i].clone(), p[j].clone()])?;
                    Ok(qq.is_zero()
                        && pq == Polynomial::from_int(&chart, (i == j) as i64)
                        && pp == epsilon_combination(&b, i, j))
                });
            }
        }
        r.attempt(format!("{label}: X_{{p1,p2,p3}} = B^i ∂q_i"), || {
            Ok(derived_vf(&s, 2, &p)? == models::field_along_q(&b)?)
        });
        for t in 0..samples {
            let (f, g) = (random::polynomial(&mut rng, &chart), random::polynomial(&mut rng, &chart));
            r.attempt(format!("{label}: X_f(g) = {{f, g}}, sample {t}"), || {
                let xf = hamiltonian_vf(&s, &f)?;
                Ok(xf.apply(&g)? == s.poisson_bracket(&f, &g)?
                    && s.omega().contract(&xf)? == Form::differential(&f).neg())
            });
        }
    }
    r.attempt("ω0: X_{p1,p2,p3} = 0", || Ok(derived_vf(&standard, 2, &p)?.is_zero()));
    r
}

fn divergence(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("divergence");
    let chart = Chart::darboux(3).expect("fixed chart");
    let p: Vec<Polynomial> = (3..6).map(|i| Polynomial::var(&chart, i).unwrap()).collect();
    let mut rng = random::rng(0x7434);
    for (comps, closed) in [(["q2", "q3", "q1"], true), (["q1", "0", "0"], false)] {
        let label = format!("B = ({})", comps.join(", "));
        let b = models::magnetic_field(&chart, comps).expect("fixed field");
        let div = models::divergence(&b);
        let lam = match models::magnetic_form(&chart, &b).and_then(|w| poisson_bivector(&w)) {
            Ok(l) => l,
            Err(e) => {
                r.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        r.attempt(format!("{label}: dω_B = 0 ⇔ div B = 0"), || {
            let d = models::magnetic_form(&chart, &b)?.exterior_derivative();
            Ok(d.is_zero() == div.is_zero() && div.is_zero() == closed)
        });
        match jacobiator(&lam, &p[0], &p[1], &p[2]) {
            Ok(j) if closed => r.check(j.is_zero(), || format!("{label}: jacobiator(p1,p2,p3) = {j}")),
            Ok(j) => {
                r.note(format!("{label}: jacobiator(p1, p2, p3) = {j}, div B = {div}"));
                r.check(j.is_constant() && (j == div || j == -&div), || {
                    format!("{label}: jacobiator(p1,p2,p3) = {j}, expected ±{div}")
                });
            }
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
        if closed {
            for t in 0..samples {
                let fs = random_args(&mut rng, &chart, 3);
                r.attempt(format!("{label}: jacobiator vanishes, sample {t}"), || {
                    Ok(jacobiator(&lam, &fs[0], &fs[1], &fs[2])?.is_zero())
                });
            }
        }
    }
    r
}

fn xidentity(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("xidentity");
    let mut rng = random::rng(0x7435);
    for n in [2, 3] {
        let s = SymplecticData::darboux(n).expect("Darboux structure");
        for t in 0..samples {
            let fs = random_args(&mut rng, s.chart(), 3);
            r.attempt(format!("n = {n}, sample {t}"), || {
                let lhs = derived_vf(&s, 2, &fs)?;
                let mut rhs = Multivector::zero(s.chart(), 1);
                for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                    let coeff = s.poisson_bracket(&fs[a], &fs[b])?;
                    rhs = rhs.try_add(&hamiltonian_vf(&s, &fs[c])?.scale(&coeff)?)?;
                }
                Ok(lhs == rhs)
            });
        }
    }
    r
}

fn so3() -> SuiteReport {
    let mut r = SuiteReport::new("so3");
    let s = SymplecticData::darboux(3).expect("Darboux structure");
    let result = (|| -> Result<Option<Rational>> {
        let j = models::angular_momentum(s.chart())?;
        let x = derived_vf(&s, 2, &j)?;
        let xc = hamiltonian_vf(&s, &models::casimir(&j))?;
        if x.is_zero() || xc.is_zero() {
            return Ok(None);
        }
        Ok(proportionality(&x, &xc))
    })();
    match result {
        Ok(Some(c)) => {
            r.note(format!("X_{{J1,J2,J3}} = c·X_C with c = {}", c));
            r.check(true, String::new);
            let half = rat(1, 2);
            r.check(c == half || c == -half, || format!("|c| = ½ expected, found {c}"));
        }
        Ok(None) => r.check(false, || "X_{J1,J2,J3} is not a constant multiple of X_C".into()),
        Err(e) => r.check(false, || e.to_string()),
    }
    r
}

struct DiracCase {
    n: usize,
    thetas: &'static [&'static str],
}

const DIRAC_CASES: &[DiracCase] = &[
    DiracCase { n: 2, thetas: &["q2", "p2"] },
    DiracCase { n: 2, thetas: &["q2 + q1^2", "p2"] },
    DiracCase { n: 2, thetas: &["q2", "p2 + q2*q1 + p2*q1"] },
    DiracCase { n: 3, thetas: &["q3", "p3"] },
    DiracCase { n: 3, thetas: &["q3 + q1*p2", "p3 - p1^2"] },
    DiracCase { n: 3, thetas: &["q2", "p2", "q3", "p3"] },
    DiracCase { n: 3, thetas: &["q2 + q1^2", "p2", "q3", "p3 + p1^2"] },
];

fn dirac(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("dirac");
    let mut rng = random::rng(0x7436);
    let mut constants: Vec<(usize, usize, Rational)> = Vec::new();
    for case in DIRAC_CASES {
        let mut sub = SuiteReport::new("dirac");
        let label = format!("n = {}, θ = ({})", case.n, case.thetas.join(", "));
        let s = SymplecticData::darboux(case.n).expect("Darboux structure");
        let thetas: Vec<Polynomial> = case.thetas.iter().map(|t| poly(s.chart(), t)).collect();
        let set = match ConstraintSet::new(&s, thetas) {
            Ok(c) if c.is_regular() => c,
            Ok(_) => {
                r.check(false, || format!("{label}: not regular"));
                continue;
            }
            Err(e) => {
                r.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        let norm = match set.normalization() {
            Ok(n) => n,
            Err(e) => {
                r.check(false, || format!("{label}: calibration: {e}"));
                continue;
            }
        };
        let k = set.k();
        sub.note(format!(
            "{label}: c = {} (reference pair {}, {}; det C = {})",
            norm.c,
            norm.reference.0,
            norm.reference.1,
            set.det()
        ));
        constants.push((case.n, k, norm.c.clone()));
        let chart = s.chart().clone();
        for t in 0..samples {
            let (f, g) = (random::polynomial(&mut rng, &chart), random::polynomial(&mut rng, &chart));
            sub.attempt(format!("{label}: pipelines agree, sample {t}"), || {
                let m = dirac_bracket_matrix(&set, &f, &g)?;
                let fm = dirac_bracket_form(&set, &f, &g)?;
                let anti = dirac_bracket_matrix(&set, &g, &f)?;
                Ok(norm.holds_for(&set, &f, &g)? && m == fm && m == anti.neg())
            });
        }
        for (i, theta) in set.thetas().iter().enumerate() {
            let f = random::nonconstant(&mut rng, &chart);
            sub.attempt(format!("{label}: θ{} is a Casimir", i + 1), || {
                Ok(dirac_bracket_matrix(&set, theta, &f)?.is_zero()
                    && dirac_bracket_form(&set, theta, &f)?.is_zero())
            });
        }
        if set.det().is_constant() {
            for t in 0..samples.div_ceil(2) {
                let fs = random_args(&mut rng, &chart, 3);
                sub.attempt(format!("{label}: Jacobi identity, sample {t}"), || {
                    Ok(jacobiator(&set, &fs[0], &fs[1], &fs[2])?.is_zero())
                });
            }
        }
        r.absorb(sub);
    }
    let mut grid: Vec<(usize, usize)> = constants.iter().map(|(n, k, _)| (*n, *k)).collect();
    grid.dedup();
    for (n, k) in grid {
        let cs: Vec<&Rational> = constants.iter().filter(|c| c.0 == n && c.1 == k).map(|c| &c.2).collect();
        let expect = Rational::new(1.into(), ((n - k) as i64).into());
        r.note(format!(
            "(n, k) = ({n}, {k}): c = {}, 1/(n−k) = {}",
            cs[0],
            expect
        ));
        r.check(cs.iter().all(|c| *c == cs[0]), || format!("(n, k) = ({n}, {k}): constants differ: {cs:?}"));
    }
    for (n, rr) in [(2, 1), (3, 1), (3, 2)] {
        reduction(&mut r, &mut rng, n, rr, samples);
    }
    r
}

/// Canonical constraints `q_j, p_j (j > r)`: the Dirac bracket of functions
/// of the first `r` pairs is their Poisson bracket on the reduced chart.
fn reduction(r: &mut SuiteReport, rng: &mut SuiteRng, n: usize, keep: usize, samples: usize) {
    let label = format!("reduction {n} → {keep}");
    let big = SymplecticData::darboux(n).expect("Darboux structure");
    let small = SymplecticData::darboux(keep).expect("Darboux structure");
    let set = match models::canonical_constraints(big.chart(), n, keep).and_then(|t| ConstraintSet::new(&big, t)) {
        Ok(s) => s,
        Err(e) => return r.check(false, || format!("{label}: {e}")),
    };
    for t in 0..samples.div_ceil(4) {
        let (f, g) = (random::polynomial(rng, small.chart()), random::polynomial(rng, small.chart()));
        r.attempt(format!("{label}, sample {t}"), || {
            let reduced = transfer(&small.poisson_bracket(&f, &g)?, big.chart())?;
            let (fb, gb) = (transfer(&f, big.chart())?, transfer(&g, big.chart())?);
            let expect = RationalExpr::from_poly(reduced);
            Ok(dirac_bracket_matrix(&set, &fb, &gb)? == expect && dirac_bracket_form(&set, &fb, &gb)? == expect)
        });
    }
}

fn jacobi(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("jacobi");
    let mut rng = random::rng(0x7437);
    let built = models::contact_pair(false).and_then(|(c, l, x)| Ok((c, JacobiDef::new(l, x)?)));
    let homogeneous = models::contact_pair(true).and_then(|(c, l, x)| Ok((c, JacobiDef::new(l, x)?)));
    let ((chart, def), (hchart, hdef)) = match (built, homogeneous) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.check(false, || e.to_string());
            return r;
        }
    };
    r.check(def.is_jacobi(), || "contact pair: [X,Λ] = 0, [Λ,Λ] = 2X∧Λ".into());
    r.attempt("∂x∧∂y with ∂z is not a Jacobi pair", || {
        let lam = crate::exterior::parse_multivector("e(x)^e(y)", &chart)?;
        Ok(!jacobi_pair_check(&lam, def.vector_field())?)
    });
    for t in 0..samples {
        let fs = random_args(&mut rng, &chart, 3);
        r.attempt(format!("Jacobi identity, sample {t}"), || {
            Ok(jacobiator(&def, &fs[0], &fs[1], &fs[2])?.is_zero())
        });
    }
    for t in 0..samples {
        let f = random::polynomial_in(&mut rng, &hchart, &[0, 1, 2], 2, 3);
        let g = random::polynomial_in(&mut rng, &hchart, &[0, 1, 2], 2, 3);
        r.attempt(format!("homogenization, sample {t}"), || {
            let direct = jacobi_bracket(&def, &transfer(&f, &chart)?, &transfer(&g, &chart)?)?;
            Ok(homogenization_check(&hdef, &f, &g)?
                && transfer(&jacobi_bracket(&hdef, &f, &g)?, &chart)? == direct)
        });
    }
    r
}

fn volume(samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("volume");
    let chart = Chart::new(&["x1", "x2", "x3", "x4"]).expect("fixed chart");
    let mut rng = random::rng(0x7438);
    let omega = Form::basis(&chart, &[0, 1, 2, 3], Polynomial::one(&chart)).expect("top form");
    let mut poisson_count = 0;
    for t in 0..samples {
        let lam: Multivector = match t % 3 {
            0 => random::graded::<Contravariant>(&mut rng, &chart, 2, 2, 6),
            1 => random::graded::<Contravariant>(&mut rng, &chart, 2, 0, 4),
            _ => {
                let f = random::polynomial(&mut rng, &chart);
                random::graded::<Contravariant>(&mut rng, &chart, 2, 0, 1).scale(&f).expect("same chart")
            }
        };
        match (volume_poisson_criterion(&lam, &omega), is_poisson(&lam)) {
            (Ok(a), Ok(b)) => {
                poisson_count += b as usize;
                r.check(a == b, || format!("sample {t}: criterion {a}, [Λ,Λ] = 0 is {b} for {lam}"));
            }
            (Err(e), _) | (_, Err(e)) => r.check(false, || format!("sample {t}: {e}")),
        }
    }
    r.note(format!("{poisson_count} of {samples} sampled bivectors are Poisson"));
    for t in 0..samples {
        let l1: Multivector = random::graded::<Contravariant>(&mut rng, &chart, 2, 2, 3);
        let l2: Multivector = random::graded::<Contravariant>(&mut rng, &chart, 2, 2, 3);
        let c = random::polynomial_in(&mut rng, &chart, &[0, 1, 2, 3], 1, 2);
        r.attempt(format!("volume identity, sample {t}"), || {
            // A non-constant volume coefficient exercises the dΩ term.
            let scaled = omega.scale(&(&c + &Polynomial::one(&chart)))?;
            let vol = if scaled.is_zero() { omega.clone() } else { scaled };
            schouten_volume_identity_check(&l1, &l2, &vol)
        });
    }
    r
}

fn nonderivation() -> SuiteReport {
    let mut r = SuiteReport::new("nonderivation");
    let chart = Chart::darboux(3).expect("fixed chart");
    let found = (|| -> Result<Option<(Polynomial, Polynomial, Polynomial, Polynomial)>> {
        let b = models::magnetic_field(&chart, ["q2", "q3", "q1"])?;
        let s = SymplecticData::new(models::magnetic_form(&chart, &b)?)?;
        let p: Vec<Polynomial> = (3..6).map(|i| Polynomial::var(&chart, i)).collect::<Result<_>>()?;
        let x = derived_vf(&s, 2, &p)?;
        let vars: Vec<Polynomial> = (0..6).map(|i| Polynomial::var(&chart, i)).collect::<Result<_>>()?;
        for (i, f) in vars.iter().enumerate() {
            for g in &vars[i + 1..] {
                let lhs = x.apply(&s.poisson_bracket(f, g)?)?;
                let rhs = &s.poisson_bracket(&x.apply(f)?, g)? + &s.poisson_bracket(f, &x.apply(g)?)?;
                if lhs != rhs {
                    return Ok(Some((f.clone(), g.clone(), lhs, rhs)));
                }
            }
        }
        Ok(None)
    })();
    match found {
        Ok(Some((f, g, lhs, rhs))) => {
            r.note(format!(
                "B = (q2, q3, q1), X = X_{{p1,p2,p3}}: X({{{f}, {g}}}) = {lhs} but {{X{f}, {g}}} + {{{f}, X{g}}} = {rhs}"
            ));
            r.check(true, String::new);
        }
        Ok(None) => r.check(false, || "no witness among coordinate pairs".into()),
        Err(e) => r.check(false, || e.to_string()),
    }
    r
}
