//! Brackets defined by differential forms: the `k`-bracket of a volume form
//! and an `(m−k)`-form, the normalized brackets of powers of a symplectic
//! form, Nambu top brackets, the vector fields they induce, and Jacobi
//! brackets with their exponential homogenization.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{factorial, mv_from_form, Form, Multivector, SymplecticData};
use crate::polyring::{ensure_same, matrix, ChartRef, ExpPoly, Polynomial, RationalExpr};
use crate::schouten::jacobi_pair_check;

/// `df_1 ∧ … ∧ df_k`.
pub fn differentials_wedge(chart: &ChartRef, fs: &[Polynomial]) -> Result<Form> {
    let mut acc = Form::scalar(Polynomial::one(chart));
    for f in fs {
        ensure_same(chart, f.chart())?;
        acc = acc.wedge(&Form::differential(f))?;
    }
    Ok(acc)
}

/// The scalar `{f_1,…,f_k}` in `{f_1,…,f_k} Ω = df_1 ∧ … ∧ df_k ∧ α`, for
/// any volume `Ω` (not necessarily constant).
pub fn form_bracket(volume: &Form, alpha: &Form, fs: &[Polynomial]) -> Result<RationalExpr> {
    let dim = volume.chart().dim();
    if volume.grade() != dim {
        return Err(Error::GradeMismatch(format!("a volume form has grade {dim}, got {}", volume.grade())));
    }
    ensure_same(volume.chart(), alpha.chart())?;
    if fs.len() + alpha.grade() != dim {
        return Err(Error::Arity { expected: dim - alpha.grade().min(dim), got: fs.len() });
    }
    let top = differentials_wedge(volume.chart(), fs)?.wedge(alpha)?;
    RationalExpr::new(top.top_coefficient(), volume.top_coefficient())
        .map_err(|_| Error::Degenerate("volume form is zero".into()))
}

/// A `k`-bracket `{f_1,…,f_k} Ω = df_1∧…∧df_k∧α` together with its
/// generating `k`-vector `Λ`, `i_Λ Ω = α`.
#[derive(Debug, Clone)]
pub struct BracketDef {
    volume: Form,
    alpha: Form,
    generator: Multivector,
}

impl BracketDef {
    /// Requires a constant-coefficient volume form.
    pub fn new(volume: Form, alpha: Form) -> Result<Self> {
        let generator = mv_from_form(&volume, &alpha)?;
        if volume.contract(&generator)? != alpha {
            return Err(Error::Inconsistent("i_Λ Ω does not reproduce α".into()));
        }
        Ok(BracketDef { volume, alpha, generator })
    }

    pub fn arity(&self) -> usize {
        self.generator.grade()
    }

    pub fn generator(&self) -> &Multivector {
        &self.generator
    }

    pub fn volume(&self) -> &Form {
        &self.volume
    }

    pub fn alpha(&self) -> &Form {
        &self.alpha
    }

    pub fn chart(&self) -> &ChartRef {
        self.volume.chart()
    }

    /// Evaluates the bracket both as `⟨df_1∧…∧df_k, Λ⟩` and from the top-form
    /// equation; the two must agree.
    pub fn bracket(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: fs.len() });
        }
        let paired = self.generator.evaluate(fs)?;
        let divided = form_bracket(&self.volume, &self.alpha, fs)?;
        if RationalExpr::from_poly(paired.clone()) != divided {
            return Err(Error::Inconsistent(format!(
                "pairing gives {paired}, form equation gives {divided}"
            )));
        }
        Ok(paired)
    }
}

fn check_power(s: &SymplecticData, k: usize) -> Result<()> {
    let n = s.half_dim();
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} must satisfy 1 ≤ k ≤ {n}")));
    }
    Ok(())
}

/// The `2k`-bracket
/// `{f_1,…,f_{2k}} ω^n/n! = k! df_1∧…∧df_{2k}∧ω^{n−k}/(n−k)!`.
pub fn omega_power_bracket(s: &SymplecticData, k: usize, fs: &[Polynomial]) -> Result<Polynomial> {
    check_power(s, k)?;
    if fs.len() != 2 * k {
        return Err(Error::Arity { expected: 2 * k, got: fs.len() });
    }
    let n = s.half_dim();
    let top = differentials_wedge(s.chart(), fs)?.wedge(&s.omega_power(n - k))?;
    let scale = factorial(k) / (factorial(n - k) * s.volume_constant());
    Ok(top.top_coefficient().scale(&scale))
}

/// `Λ^k`, the generator of [`omega_power_bracket`].
pub fn omega_power_generator(s: &SymplecticData, k: usize) -> Result<Multivector> {
    check_power(s, k)?;
    Ok(s.poisson().power(k))
}

/// `BracketDef` for `Ω = ω^n/n!`, `α = k! ω^{n−k}/(n−k)!`.
pub fn omega_power_bracket_def(s: &SymplecticData, k: usize) -> Result<BracketDef> {
    check_power(s, k)?;
    let n = s.half_dim();
    let alpha = s.omega_power(n - k).scale_rational(&(factorial(k) / factorial(n - k)));
    BracketDef::new(s.volume().clone(), alpha)
}

/// Nambu bracket `{f_1,…,f_m} Ω = γ df_1∧…∧df_m`, computed from the top form
/// and from `γ det(∂f_i/∂x_j)`; the two must agree.
pub fn nambu_top_bracket(volume: &Form, gamma: &Polynomial, fs: &[Polynomial]) -> Result<Polynomial> {
    let chart = volume.chart();
    let c = volume.volume_constant()?;
    ensure_same(chart, gamma.chart())?;
    let m = chart.dim();
    if fs.len() != m {
        return Err(Error::Arity { expected: m, got: fs.len() });
    }
    let inv = num_rational::BigRational::one() / c;
    let by_forms = (gamma * &differentials_wedge(chart, fs)?.top_coefficient()).scale(&inv);
    let jacobian: Vec<Vec<Polynomial>> = fs.iter().map(Polynomial::gradient).collect();
    let by_det = (gamma * &matrix::determinant(chart, &jacobian)).scale(&inv);
    if by_forms != by_det {
        return Err(Error::Inconsistent(format!(
            "wedge route gives {by_forms}, determinant route gives {by_det}"
        )));
    }
    Ok(by_forms)
}

/// `X_f` with `i_{X_f} ω = −df`, so that `X_f(g) = {f, g}`.
pub fn hamiltonian_vf(s: &SymplecticData, f: &Polynomial) -> Result<Multivector> {
    ensure_same(s.chart(), f.chart())?;
    let lam = s.poisson().bivector_matrix()?;
    let grad = f.gradient();
    let m = s.chart().dim();
    let comps = (0..m)
        .map(|b| {
            (0..m).fold(Polynomial::zero(s.chart()), |acc, a| &acc + &(&lam[a][b] * &grad[a]))
        })
        .collect();
    Multivector::vector_field(s.chart(), comps)
}

/// `X_{f_1,…,f_{2k−1}}`: the vector field `g ↦ {f_1,…,f_{2k−1}, g}` of the
/// bracket `{f_1,…,f_{2k}} ω^n/n! = df_1∧…∧df_{2k}∧ω^{n−k}/(n−k)!`, that is
/// [`omega_power_bracket`] divided by `k!`. For `k = 1` this is `X_f`.
pub fn derived_vf(s: &SymplecticData, k: usize, fs: &[Polynomial]) -> Result<Multivector> {
    check_power(s, k)?;
    if fs.len() + 1 != 2 * k {
        return Err(Error::Arity { expected: 2 * k - 1, got: fs.len() });
    }
    let n = s.half_dim();
    let chart = s.chart();
    let partial = differentials_wedge(chart, fs)?;
    let tail = s.omega_power(n - k);
    let scale = num_rational::BigRational::one() / (factorial(n - k) * s.volume_constant());
    let mut comps = Vec::with_capacity(chart.dim());
    for i in 0..chart.dim() {
        let dx = Form::basis(chart, &[i], Polynomial::one(chart))?;
        let top = partial.wedge(&dx)?.wedge(&tail)?;
        comps.push(top.top_coefficient().scale(&scale));
    }
    Multivector::vector_field(chart, comps)
}

/// A bivector and a vector field defining the bracket
/// `{f, g} = Λ(f, g) + f X(g) − g X(f)`.
#[derive(Debug, Clone)]
pub struct JacobiDef {
    lambda: Multivector,
    x: Multivector,
    is_jacobi: bool,
}

impl JacobiDef {
    pub fn new(lambda: Multivector, x: Multivector) -> Result<Self> {
        let is_jacobi = jacobi_pair_check(&lambda, &x)?;
        Ok(JacobiDef { lambda, x, is_jacobi })
    }

    pub fn lambda(&self) -> &Multivector {
        &self.lambda
    }

    pub fn vector_field(&self) -> &Multivector {
        &self.x
    }

    /// Whether `[X,Λ] = 0` and `[Λ,Λ] = 2X∧Λ` hold.
    pub fn is_jacobi(&self) -> bool {
        self.is_jacobi
    }

    pub fn chart(&self) -> &ChartRef {
        self.lambda.chart()
    }
}

pub fn jacobi_bracket(def: &JacobiDef, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let lam = def.lambda.evaluate(&[f.clone(), g.clone()])?;
    let xg = def.x.apply(g)?;
    let xf = def.x.apply(f)?;
    Ok(&(&lam + &(f * &xg)) - &(g * &xf))
}

/// Both sides of `e^{−2s}(Λ + ∂_s∧X)(e^s f, e^s g) = Λ(f,g) + fX(g) − gX(f)`
/// on a chart whose distinguished coordinate is `s`.
pub fn homogenization_sides(
    def: &JacobiDef,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<(ExpPoly, ExpPoly)> {
    let chart = def.chart();
    let s = chart.distinguished().ok_or(Error::MissingDistinguished)?;
    ensure_same(chart, f.chart())?;
    ensure_same(chart, g.chart())?;
    for (name, p) in [("f", f), ("g", g)] {
        if p.depends_on(s) {
            return Err(Error::Degenerate(format!("{name} must not depend on {}", chart.name(s))));
        }
    }
    let ds = Multivector::basis(chart, &[s], Polynomial::one(chart))?;
    let big = def.lambda.try_add(&ds.wedge(&def.x)?)?;
    let m = big.bivector_matrix()?;
    let ft = ExpPoly::monomial(1, f.clone())?;
    let gt = ExpPoly::monomial(1, g.clone())?;
    let dim = chart.dim();
    let df: Vec<ExpPoly> = (0..dim).map(|i| ft.partial(i)).collect::<Result<_>>()?;
    let dg: Vec<ExpPoly> = (0..dim).map(|i| gt.partial(i)).collect::<Result<_>>()?;
    let mut acc = ExpPoly::zero(chart)?;
    for (a, row) in m.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&df[a].mul(&dg[b])?.mul_poly(c)?)?;
        }
    }
    let lhs = ExpPoly::exp(chart, -2)?.mul(&acc)?;
    let rhs = ExpPoly::from_poly(jacobi_bracket(def, f, g)?)?;
    Ok((lhs, rhs))
}

pub fn homogenization_check(def: &JacobiDef, f: &Polynomial, g: &Polynomial) -> Result<bool> {
    let (lhs, rhs) = homogenization_sides(def, f, g)?;
    Ok(lhs == rhs)
}

/// Anything with a binary bracket on polynomials.
pub trait BinaryBracket {
    fn chart(&self) -> &ChartRef;
    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial>;
}

impl BinaryBracket for SymplecticData {
    fn chart(&self) -> &ChartRef {
        SymplecticData::chart(self)
    }

    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.poisson_bracket(f, g)
    }
}

impl BinaryBracket for JacobiDef {
    fn chart(&self) -> &ChartRef {
        JacobiDef::chart(self)
    }

    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        jacobi_bracket(self, f, g)
    }
}

impl BinaryBracket for BracketDef {
    fn chart(&self) -> &ChartRef {
        BracketDef::chart(self)
    }

    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.bracket(&[f.clone(), g.clone()])
    }
}

/// A bivector used directly as `{f, g} = Λ(f, g)`.
impl BinaryBracket for Multivector {
    fn chart(&self) -> &ChartRef {
        Multivector::chart(self)
    }

    fn bracket2(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.evaluate(&[f.clone(), g.clone()])
    }
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobiator<B: BinaryBracket + ?Sized>(
    b: &B,
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
) -> Result<Polynomial> {
    let t1 = b.bracket2(f, &b.bracket2(g, h)?)?;
    let t2 = b.bracket2(g, &b.bracket2(h, f)?)?;
    let t3 = b.bracket2(h, &b.bracket2(f, g)?)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// Coefficient of `X` on `Y` if `X = c·Y` for a rational constant `c`.
pub fn proportionality(x: &Multivector, y: &Multivector) -> Option<num_rational::BigRational> {
    let (blade, yc) = y.terms().next()?;
    let xc = x.coefficient(blade);
    let (ym, yv) = yc.leading_term()?;
    let ratio = xc
        .terms()
        .find(|(m, _)| *m == ym)
        .map(|(_, v)| v / yv)
        .unwrap_or_else(num_rational::BigRational::zero);
    (y.scale_rational(&ratio) == *x).then_some(ratio)
}
