use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use super::blade::{sort_indices, Blade};
use crate::error::{Error, Result};
use crate::polyring::{ensure_same, ChartRef, Polynomial, Rational};

/// Marker distinguishing covariant (forms) from contravariant (multivectors).
pub trait Variance: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// Basis symbol used by the text syntax: `d(x)` or `e(x)`.
    const SYMBOL: &'static str;
    const NAME: &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covariant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contravariant;

impl Variance for Covariant {
    const SYMBOL: &'static str = "d";
    const NAME: &'static str = "form";
}

impl Variance for Contravariant {
    const SYMBOL: &'static str = "e";
    const NAME: &'static str = "multivector";
}

/// Homogeneous antisymmetric tensor field with polynomial coefficients.
#[derive(Debug, Clone)]
pub struct Graded<V: Variance> {
    chart: ChartRef,
    grade: usize,
    terms: BTreeMap<Blade, Polynomial>,
    _variance: PhantomData<V>,
}

/// Differential form.
pub type Form = Graded<Covariant>;
/// Multivector field; grade 1 is a vector field.
pub type Multivector = Graded<Contravariant>;

impl<V: Variance> PartialEq for Graded<V> {
    fn eq(&self, other: &Self) -> bool {
        crate::polyring::same_chart(&self.chart, &other.chart)
            && self.grade == other.grade
            && self.terms == other.terms
    }
}

impl<V: Variance> Eq for Graded<V> {}

impl<V: Variance> Graded<V> {
    pub fn zero(chart: &ChartRef, grade: usize) -> Self {
        Graded { chart: chart.clone(), grade, terms: BTreeMap::new(), _variance: PhantomData }
    }

    /// Grade-0 element.
    pub fn scalar(p: Polynomial) -> Self {
        let mut out = Self::zero(p.chart(), 0);
        out.push(Blade::EMPTY, p);
        out
    }

    /// `coeff · b_{i1} ∧ … ∧ b_{ik}` for an arbitrary index list.
    pub fn basis(chart: &ChartRef, indices: &[usize], coeff: Polynomial) -> Result<Self> {
        for &i in indices {
            chart.check_index(i)?;
        }
        ensure_same(chart, coeff.chart())?;
        let mut out = Self::zero(chart, indices.len());
        if let Some((neg, blade)) = sort_indices(indices) {
            out.push(blade, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }

    /// Unit basis element from coordinate names.
    pub fn basis_named(chart: &ChartRef, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| chart.index_of(n).ok_or_else(|| Error::UnknownIdentifier(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::basis(chart, &idx, Polynomial::one(chart))
    }

    /// Build from `(index list, coefficient)` pairs of a common grade.
    pub fn from_terms<I>(chart: &ChartRef, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut out = Self::zero(chart, grade);
        for (idx, c) in terms {
            if idx.len() != grade {
                return Err(Error::GradeMismatch(format!(
                    "term of grade {} in a grade-{grade} {}",
                    idx.len(),
                    V::NAME
                )));
            }
            out = out.try_add(&Self::basis(chart, &idx, c)?)?;
        }
        Ok(out)
    }

    pub(crate) fn from_blades(
        chart: &ChartRef,
        grade: usize,
        terms: impl IntoIterator<Item = (Blade, Polynomial)>,
    ) -> Self {
        let mut out = Self::zero(chart, grade);
        for (b, c) in terms {
            debug_assert_eq!(b.grade(), grade);
            out.push(b, c);
        }
        out
    }

    pub(crate) fn push(&mut self, blade: Blade, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&blade) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(blade, sum);
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Polynomial)> {
        self.terms.iter().map(|(b, p)| (*b, p))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the basis element with the given (sorted) indices.
    pub fn coefficient(&self, blade: Blade) -> Polynomial {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    /// Coefficient of the full-grade basis element.
    pub fn top_coefficient(&self) -> Polynomial {
        self.coefficient(Blade::full(self.chart.dim()))
    }

    /// The polynomial a grade-0 element represents.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        (self.grade == 0).then(|| self.coefficient(Blade::EMPTY))
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        ensure_same(&self.chart, &other.chart)?;
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(format!(
                "cannot add grades {} and {}",
                self.grade, other.grade
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.push(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Graded {
            chart: self.chart.clone(),
            grade: self.grade,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
            _variance: PhantomData,
        }
    }

    pub fn scale(&self, p: &Polynomial) -> Result<Self> {
        ensure_same(&self.chart, p.chart())?;
        let mut out = Self::zero(&self.chart, self.grade);
        for (b, c) in &self.terms {
            out.push(*b, c * p);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.chart, self.grade);
        for (b, c) in &self.terms {
            out.push(*b, c.scale(r));
        }
        out
    }

    /// Exterior product. Sign from the parity of the index merge; repeated
    /// indices drop the term.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = Self::zero(&self.chart, self.grade + other.grade);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((neg, b)) = ba.merge(*bb) {
                    let c = ca * cb;
                    out.push(b, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power; `k = 0` gives the constant 1.
    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::scalar(Polynomial::one(&self.chart));
        for _ in 0..k {
            acc = acc.wedge(self).expect("same chart");
        }
        acc
    }

    /// Apply a map to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.chart, self.grade);
        for (b, c) in &self.terms {
            out.push(*b, f(c));
        }
        out
    }

    /// Divide every coefficient exactly by `p`.
    pub fn exact_divide(&self, p: &Polynomial) -> Result<Self> {
        let mut out = Self::zero(&self.chart, self.grade);
        for (b, c) in &self.terms {
            out.push(*b, c.exact_divide(p)?);
        }
        Ok(out)
    }

    /// Canonical text; terms ordered by index tuple.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        if self.grade == 0 {
            return self.coefficient(Blade::EMPTY).to_text();
        }
        let mut entries: Vec<(Vec<usize>, &Polynomial)> =
            self.terms.iter().map(|(b, c)| (b.indices(), c)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (k, (idx, c)) in entries.iter().enumerate() {
            let basis: Vec<String> = idx
                .iter()
                .map(|&i| format!("{}({})", V::SYMBOL, self.chart.name(i)))
                .collect();
            let basis = basis.join("^");
            let (neg, body) = if c.num_terms() == 1 {
                let t = c.to_text();
                let (neg, rest) = match t.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, t),
                };
                if rest == "1" {
                    (neg, basis)
                } else {
                    (neg, format!("{rest}*{basis}"))
                }
            } else {
                (false, format!("({c})*{basis}"))
            };
            match (k, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl<V: Variance> fmt::Display for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Form {
    /// `df = Σ ∂f/∂x_i dx_i`.
    pub fn differential(f: &Polynomial) -> Form {
        let chart = f.chart().clone();
        Form::from_blades(
            &chart,
            1,
            f.gradient().into_iter().enumerate().map(|(i, c)| (Blade::single(i), c)),
        )
    }

    /// Exterior derivative.
    pub fn exterior_derivative(&self) -> Form {
        let dim = self.chart.dim();
        let mut out = Form::zero(&self.chart, self.grade + 1);
        for (b, c) in &self.terms {
            for i in 0..dim {
                if b.contains(i) {
                    continue;
                }
                let dc = c.partial_unchecked(i);
                if dc.is_zero() {
                    continue;
                }
                let (neg, nb) = Blade::single(i).merge(*b).expect("disjoint");
                out.push(nb, if neg { -dc } else { dc });
            }
        }
        out
    }

    /// Interior product `i_Λ self`.
    ///
    /// For `Λ = X1 ∧ … ∧ Xj` the contraction applies `i_{X1}` first, then
    /// `i_{X2}`, and so on.
    pub fn contract(&self, mv: &Multivector) -> Result<Form> {
        ensure_same(&self.chart, &mv.chart)?;
        if mv.grade > self.grade {
            return Err(Error::GradeMismatch(format!(
                "cannot contract a grade-{} multivector into a grade-{} form",
                mv.grade, self.grade
            )));
        }
        let mut out = Form::zero(&self.chart, self.grade - mv.grade);
        for (bj, lj) in &mv.terms {
            for (bi, ci) in &self.terms {
                if !bj.is_subset_of(*bi) {
                    continue;
                }
                let c = lj * ci;
                let nb = bi.without(*bj);
                out.push(nb, if bi.removal_sign(*bj) { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Full pairing `⟨self, Λ⟩` of equal grades.
    pub fn pair(&self, mv: &Multivector) -> Result<Polynomial> {
        if self.grade != mv.grade {
            return Err(Error::GradeMismatch(format!(
                "pairing needs equal grades, got {} and {}",
                self.grade, mv.grade
            )));
        }
        Ok(self.contract(mv)?.coefficient(Blade::EMPTY))
    }

    /// Cartan formula `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &Multivector) -> Result<Form> {
        if x.grade != 1 {
            return Err(Error::GradeMismatch("Lie derivative needs a vector field".into()));
        }
        let a = self.exterior_derivative().contract(x)?;
        if self.grade == 0 {
            return Ok(a);
        }
        a.try_add(&self.contract(x)?.exterior_derivative())
    }

    /// Constant coefficient of a single-term top form, if it is one.
    pub fn volume_constant(&self) -> Result<Rational> {
        let dim = self.chart.dim();
        if self.grade != dim {
            return Err(Error::GradeMismatch(format!(
                "a volume form has grade {dim}, got {}",
                self.grade
            )));
        }
        match self.top_coefficient().constant_value() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::Degenerate("volume form coefficient is not a nonzero constant".into())),
        }
    }

    /// Antisymmetric coefficient matrix `W` of a 2-form, `ω = Σ_{i<j} W_ij dx_i∧dx_j`.
    pub fn two_form_matrix(&self) -> Result<Vec<Vec<Polynomial>>> {
        if self.grade != 2 {
            return Err(Error::GradeMismatch(format!("expected a 2-form, got grade {}", self.grade)));
        }
        let m = self.chart.dim();
        let mut w = vec![vec![Polynomial::zero(&self.chart); m]; m];
        for (b, c) in &self.terms {
            let idx = b.indices();
            w[idx[0]][idx[1]] = c.clone();
            w[idx[1]][idx[0]] = -c;
        }
        Ok(w)
    }
}

impl Multivector {
    /// `X(f) = Σ X^i ∂f/∂x_i` for a vector field.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        Form::differential(f).pair(self)
    }

    /// `Λ(f_1, …, f_k) = ⟨df_1 ∧ … ∧ df_k, Λ⟩`.
    pub fn evaluate(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.len() != self.grade {
            return Err(Error::Arity { expected: self.grade, got: fs.len() });
        }
        let mut acc = Form::scalar(Polynomial::one(&self.chart));
        for f in fs {
            ensure_same(&self.chart, f.chart())?;
            acc = acc.wedge(&Form::differential(f))?;
        }
        acc.pair(self)
    }

    /// Component `X^i` of a vector field.
    pub fn component(&self, index: usize) -> Polynomial {
        self.coefficient(Blade::single(index))
    }

    /// Vector field from its components.
    pub fn vector_field(chart: &ChartRef, components: Vec<Polynomial>) -> Result<Multivector> {
        if components.len() != chart.dim() {
            return Err(Error::Arity { expected: chart.dim(), got: components.len() });
        }
        for c in &components {
            ensure_same(chart, c.chart())?;
        }
        Ok(Multivector::from_blades(
            chart,
            1,
            components.into_iter().enumerate().map(|(i, c)| (Blade::single(i), c)),
        ))
    }

    /// Bivector from an antisymmetric matrix, `Λ = Σ_{i<j} M_ij ∂_i∧∂_j`.
    pub fn from_matrix(chart: &ChartRef, m: &[Vec<Polynomial>]) -> Multivector {
        let dim = chart.dim();
        let mut out = Multivector::zero(chart, 2);
        for (i, row) in m.iter().enumerate().take(dim) {
            for (j, c) in row.iter().enumerate().take(dim).skip(i + 1) {
                out.push(Blade((1 << i) | (1 << j)), c.clone());
            }
        }
        out
    }

    /// Antisymmetric component matrix of a bivector.
    pub fn bivector_matrix(&self) -> Result<Vec<Vec<Polynomial>>> {
        if self.grade != 2 {
            return Err(Error::GradeMismatch(format!("expected a bivector, got grade {}", self.grade)));
        }
        let m = self.chart.dim();
        let mut w = vec![vec![Polynomial::zero(&self.chart); m]; m];
        for (b, c) in &self.terms {
            let idx = b.indices();
            w[idx[0]][idx[1]] = c.clone();
            w[idx[1]][idx[0]] = -c;
        }
        Ok(w)
    }
}

/// Multivector `Λ` with `i_Λ Ω = a` for a constant-coefficient volume `Ω`.
pub fn mv_from_form(volume: &Form, a: &Form) -> Result<Multivector> {
    ensure_same(volume.chart(), a.chart())?;
    let c = volume.volume_constant()?;
    let dim = volume.chart().dim();
    if a.grade() > dim {
        return Err(Error::GradeMismatch(format!("grade {} exceeds dimension {dim}", a.grade())));
    }
    let full = Blade::full(dim);
    let inv = Rational::one() / c;
    let terms = a.terms().map(|(b, coeff)| {
        let j = full.without(b);
        let s = if full.removal_sign(j) { -inv.clone() } else { inv.clone() };
        (j, coeff.scale(&s))
    });
    Ok(Multivector::from_blades(volume.chart(), dim - a.grade(), terms))
}

/// Poisson bivector `Λ = ω^{-1}`, oriented so that `Σ dp∧dq ↦ Σ ∂p∧∂q`.
///
/// Components are `Λ^{ij} = (W^{-1})^{ji}` where `W` is the coefficient
/// matrix of `ω`; the inverse is the adjugate over the (constant)
/// determinant.
pub fn poisson_bivector(omega: &Form) -> Result<Multivector> {
    let chart = omega.chart().clone();
    let m = chart.dim();
    if !m.is_multiple_of(2) {
        return Err(Error::Degenerate(format!("odd dimension {m} admits no symplectic form")));
    }
    let w = omega.two_form_matrix()?;
    let det = crate::polyring::matrix::determinant(&chart, &w);
    let det = match det.constant_value() {
        Some(d) if !d.is_zero() => d,
        Some(_) => return Err(Error::Degenerate("2-form is degenerate (zero determinant)".into())),
        None => {
            return Err(Error::Degenerate(format!(
                "determinant {det} of the 2-form is not constant"
            )))
        }
    };
    let adj = crate::polyring::matrix::adjugate(&chart, &w);
    let inv = Rational::one() / det;
    let lam: Vec<Vec<Polynomial>> =
        (0..m).map(|i| (0..m).map(|j| adj[j][i].scale(&inv)).collect()).collect();
    Ok(Multivector::from_matrix(&chart, &lam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, Chart};

    fn chart2() -> ChartRef {
        Chart::darboux(1).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let c = chart2();
        let dq = Form::basis_named(&c, &["q1"]).unwrap();
        let dp = Form::basis_named(&c, &["p1"]).unwrap();
        assert!(dq.wedge(&dq).unwrap().is_zero());
        let qp = dq.wedge(&dp).unwrap();
        assert_eq!(qp, Form::basis_named(&c, &["q1", "p1"]).unwrap());
        assert_eq!(dp.wedge(&dq).unwrap(), qp.neg());
        assert_eq!(qp.to_text(), "d(q1)^d(p1)");
    }

    #[test]
    fn darboux_powers() {
        let c = Chart::darboux(2).unwrap();
        let omega = Form::basis_named(&c, &["p1", "q1"])
            .unwrap()
            .try_add(&Form::basis_named(&c, &["p2", "q2"]).unwrap())
            .unwrap();
        let sq = omega.power(2);
        let want = Form::basis_named(&c, &["p1", "q1", "p2", "q2"]).unwrap().scale_rational(&int(2));
        assert_eq!(sq, want);
        assert!(omega.power(3).is_zero());
        assert_eq!(omega.power(0).as_scalar(), Some(Polynomial::one(&c)));
    }

    #[test]
    fn derivative_and_contraction() {
        let c = chart2();
        let q = Polynomial::var(&c, 0).unwrap();
        let form = Form::basis(&c, &[1], q).unwrap();
        assert_eq!(form.exterior_derivative(), Form::basis_named(&c, &["q1", "p1"]).unwrap());
        let dqdp = Form::basis_named(&c, &["q1", "p1"]).unwrap();
        let dq_vec = Multivector::basis_named(&c, &["q1"]).unwrap();
        assert_eq!(dqdp.contract(&dq_vec).unwrap(), Form::basis_named(&c, &["p1"]).unwrap());
        assert_eq!(form.lie_derivative(&dq_vec).unwrap(), Form::basis_named(&c, &["p1"]).unwrap());
        assert!(Form::basis_named(&c, &["q1"])
            .unwrap()
            .contract(&Multivector::basis_named(&c, &["q1", "p1"]).unwrap())
            .is_err());
    }

    #[test]
    fn standard_bivector() {
        let c = chart2();
        let omega = Form::basis_named(&c, &["p1", "q1"]).unwrap();
        let lam = poisson_bivector(&omega).unwrap();
        assert_eq!(lam, Multivector::basis_named(&c, &["p1", "q1"]).unwrap());
        assert_eq!(omega.contract(&lam).unwrap().as_scalar(), Some(Polynomial::one(&c)));
        assert!(poisson_bivector(&Form::zero(&c, 2)).is_err());
    }

    #[test]
    fn printing_and_signs() {
        let c = chart2();
        let q = Polynomial::var(&c, 0).unwrap();
        let f = Form::basis(&c, &[0, 1], &q + &Polynomial::one(&c)).unwrap();
        assert_eq!(f.to_text(), "(q1 + 1)*d(q1)^d(p1)");
        let g = Form::basis(&c, &[0], q.scale(&int(-2))).unwrap();
        assert_eq!(g.to_text(), "-2*q1*d(q1)");
    }
}
