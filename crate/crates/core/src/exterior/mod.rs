//! Graded exterior algebra over a coordinate chart: differential forms,
//! multivector fields, wedge, exterior derivative, contraction, pairing and
//! the volume-form isomorphism between them.

mod blade;
mod graded;
mod symplectic;
pub mod syntax;

pub use crate::polyring::{Chart, ChartRef};
pub use blade::{sort_indices, Blade};
pub use graded::{mv_from_form, poisson_bivector, Contravariant, Covariant, Form, Graded, Multivector, Variance};
pub use symplectic::{check_conventions, darboux_form, SymplecticData};
pub(crate) use symplectic::factorial;
pub use syntax::{parse_form, parse_multivector, parse_value, Value};

/// `a ∧ b`.
pub fn wedge<V: Variance>(a: &Graded<V>, b: &Graded<V>) -> crate::Result<Graded<V>> {
    a.wedge(b)
}

/// `ω^k`.
pub fn form_power(omega: &Form, k: usize) -> Form {
    omega.power(k)
}

pub fn exterior_derivative(a: &Form) -> Form {
    a.exterior_derivative()
}

/// `i_Λ a`.
pub fn contract(mv: &Multivector, a: &Form) -> crate::Result<Form> {
    a.contract(mv)
}

/// `⟨a, Λ⟩`.
pub fn pair(a: &Form, mv: &Multivector) -> crate::Result<crate::polyring::Polynomial> {
    a.pair(mv)
}

/// `L_X a`.
pub fn lie_derivative(x: &Multivector, a: &Form) -> crate::Result<Form> {
    a.lie_derivative(x)
}
