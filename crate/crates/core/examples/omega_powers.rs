//! Powers of the Darboux form: contraction with the Poisson bivector, the
//! 2k-ary brackets generated by Λ^k, and their derived vector fields.

use npoisson::brackets::{derived_vf, hamiltonian_vf, omega_power_bracket, omega_power_generator};
use npoisson::exterior::SymplecticData;
use npoisson::polyring::{int, parse_expr};
use npoisson::schouten::schouten;

fn main() -> npoisson::Result<()> {
    let s = SymplecticData::darboux(3)?;
    let chart = s.chart().clone();
    let v = |t: &str| parse_expr(t, &chart);
    println!("ω = {}\nΛ = {}", s.omega(), s.poisson());

    for k in 1..=3 {
        let wk = s.omega_power(k);
        let contracted = wk.contract(s.poisson())?;
        let ratio = (k * (3 - k + 1)) as i64;
        let expected = s.omega_power(k - 1).scale_rational(&int(ratio));
        println!("i_Λ ω^{k} = {ratio}·ω^{} : {}", k - 1, contracted == expected);
        let gen = omega_power_generator(&s, k)?;
        println!("  [Λ^{k}, Λ^{k}] = {}", schouten(&gen, &gen)?);
    }

    let fs = [v("q1*p2")?, v("p1")?, v("q2^2")?, v("p3 + q3")?];
    println!("{{q1 p2, p1, q2², p3 + q3}} = {}", omega_power_bracket(&s, 2, &fs)?);
    let top = ["p1", "q1", "p2", "q2", "p3", "q3"].map(|t| v(t).unwrap());
    println!("{{p1, q1, p2, q2, p3, q3}} = {}", omega_power_bracket(&s, 3, &top)?);

    let f = v("q1*p1 + q2")?;
    println!("X_f    = {}", hamiltonian_vf(&s, &f)?);
    println!("X_f,g,h = {}", derived_vf(&s, 2, &[f, v("p2")?, v("q3*p3")?])?);
    Ok(())
}
