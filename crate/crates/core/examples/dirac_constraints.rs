//! Dirac brackets for second-class constraints, computed from the
//! constraint matrix and from the form-division formula.

use npoisson::dirac::{calibrate_normalization, dirac_bracket_form, dirac_bracket_matrix, ConstraintSet};
use npoisson::exterior::SymplecticData;
use npoisson::polyring::parse_expr;

fn main() -> npoisson::Result<()> {
    let s = SymplecticData::darboux(3)?;
    let chart = s.chart().clone();
    let v = |t: &str| parse_expr(t, &chart);

    let set = ConstraintSet::new(&s, vec![v("q3")?, v("p3*(1 + q1)")?])?;
    println!("constraints: {}", set.thetas().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "));
    println!("det C = {}", set.det());
    let norm = calibrate_normalization(&set)?;
    println!("form quotient / matrix bracket = {} (n = {}, k = {})", norm.c, norm.n, norm.k);

    let pairs = [("q1", "p1"), ("p1", "p3"), ("q3", "p2"), ("q1*p2", "p1 + q2^2")];
    for (f, g) in pairs {
        let (f, g) = (v(f)?, v(g)?);
        let m = dirac_bracket_matrix(&set, &f, &g)?;
        let w = dirac_bracket_form(&set, &f, &g)?;
        println!("{{{f}, {g}}}_D = {m}   (form route: {w}, agree: {})", m == w);
    }
    Ok(())
}
