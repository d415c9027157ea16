//! A charged particle in a magnetic field B on T*R³: the twisted form
//! ω_B, its brackets, the Jacobi identity against div B, and the derived
//! field of the quaternary bracket.

use npoisson::brackets::{derived_vf, jacobiator, omega_power_bracket};
use npoisson::exterior::{poisson_bivector, SymplecticData};
use npoisson::models::{divergence, magnetic_field, magnetic_form};
use npoisson::polyring::{parse_expr, Chart};

fn main() -> npoisson::Result<()> {
    let chart = Chart::darboux(3)?;
    let v = |t: &str| parse_expr(t, &chart);
    let (p1, p2, p3) = (v("p1")?, v("p2")?, v("p3")?);

    for field in [["q2", "q3", "q1"], ["q1", "0", "0"]] {
        let b = magnetic_field(&chart, field)?;
        let omega = magnetic_form(&chart, &b)?;
        println!("B = ({}, {}, {}), div B = {}", b[0], b[1], b[2], divergence(&b));
        println!("  ω_B = {omega}");
        let lambda = poisson_bivector(&omega)?;
        println!("  Λ   = {lambda}");
        println!("  jacobiator(p1, p2, p3) = {}", jacobiator(&lambda, &p1, &p2, &p3)?);

        if let Ok(s) = SymplecticData::new(omega) {
            for (f, g) in [(&p1, &p2), (&p2, &p3), (&p3, &p1)] {
                println!("  {{{f}, {g}}} = {}", omega_power_bracket(&s, 1, &[f.clone(), g.clone()])?);
            }
            println!("  X_(p1,p2,p3) = {}", derived_vf(&s, 2, &[p1.clone(), p2.clone(), p3.clone()])?);
        } else {
            println!("  ω_B is not closed, so it is not symplectic");
        }
    }
    Ok(())
}
