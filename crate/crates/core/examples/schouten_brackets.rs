//! Schouten–Nijenhuis brackets of multivector fields and the Poisson test
//! [Λ, Λ] = 0, directly and through a volume form.

use npoisson::exterior::{parse_form, parse_multivector, Chart};
use npoisson::schouten::{is_poisson, schouten, schouten_volume_identity_check, volume_poisson_criterion};

fn main() -> npoisson::Result<()> {
    let chart = Chart::new(&["x", "y", "z", "w"])?;
    let mv = |t: &str| parse_multivector(t, &chart);
    let vol = parse_form("d(x)^d(y)^d(z)^d(w)", &chart)?;

    let (x, y) = (mv("y*e(x)")?, mv("x^2*e(y)")?);
    println!("[{x}, {y}] = {}", schouten(&x, &y)?);

    let candidates = [
        "e(x)^e(y) + e(z)^e(w)",
        "x*e(y)^e(z)",
        "e(x)^e(y) + x*e(z)^e(w)",
        "z*e(x)^e(y) + e(y)^e(z)",
    ];
    for t in candidates {
        let lambda = mv(t)?;
        println!(
            "Λ = {lambda}\n  [Λ, Λ] = {}\n  Poisson: {}, via volume: {}",
            schouten(&lambda, &lambda)?,
            is_poisson(&lambda)?,
            volume_poisson_criterion(&lambda, &vol)?
        );
    }
    let (a, b) = (mv(candidates[1])?, mv(candidates[3])?);
    println!("volume identity for ({a}, {b}): {}", schouten_volume_identity_check(&a, &b, &vol)?);
    Ok(())
}
