//! The contact structure Λ = (∂x + y∂z)∧∂y, X = ∂z on R³: the pair
//! conditions, its bracket, and the homogenized Poisson bracket on R⁴.

use npoisson::brackets::{homogenization_check, jacobi_bracket, jacobiator, JacobiDef};
use npoisson::models::contact_pair;
use npoisson::polyring::{int, parse_expr};
use npoisson::schouten::{jacobi_pair_check, schouten};

fn main() -> npoisson::Result<()> {
    let (chart, lambda, x) = contact_pair(false)?;
    println!("Λ = {lambda}\nX = {x}");
    println!("[X, Λ] = {}", schouten(&x, &lambda)?);
    println!("[Λ, Λ] = {}", schouten(&lambda, &lambda)?);
    println!("2 X∧Λ  = {}", x.wedge(&lambda)?.scale_rational(&int(2)));
    println!("Jacobi pair: {}", jacobi_pair_check(&lambda, &x)?);

    let def = JacobiDef::new(lambda, x)?;
    let v = |t: &str| parse_expr(t, &chart);
    for (f, g) in [("x", "y"), ("x", "z"), ("y", "z"), ("x*y", "z^2")] {
        println!("{{{f}, {g}}} = {}", jacobi_bracket(&def, &v(f)?, &v(g)?)?);
    }
    let (f, g, h) = (v("x^2 + z")?, v("y*z")?, v("x - y")?);
    println!("jacobiator({f}, {g}, {h}) = {}", jacobiator(&def, &f, &g, &h)?);

    // On R⁴ with the extra coordinate s, e^{-s}(Λ + ∂s∧X) is Poisson and
    // restricts to the bracket above on functions e^s f.
    let (chart, lambda, x) = contact_pair(true)?;
    let def = JacobiDef::new(lambda, x)?;
    let (f, g) = (parse_expr("x^2 + z", &chart)?, parse_expr("y*z - 1", &chart)?);
    println!("homogenization holds for ({f}, {g}): {}", homogenization_check(&def, &f, &g)?);
    Ok(())
}
