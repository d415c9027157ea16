//! Nambu brackets: γ times the Jacobian determinant, obtained from a
//! volume form by division.

use npoisson::brackets::nambu_top_bracket;
use npoisson::exterior::parse_form;
use npoisson::polyring::{parse_expr, Chart};

fn main() -> npoisson::Result<()> {
    let chart = Chart::new(&["x", "y", "z"])?;
    let vol = parse_form("d(x)^d(y)^d(z)", &chart)?;
    let p = |t: &str| parse_expr(t, &chart);

    for gamma in ["1", "x*y", "1 + z^2"] {
        let gamma = p(gamma)?;
        let fs = [p("x^2 + y")?, p("y*z")?, p("x + z")?];
        let v = nambu_top_bracket(&vol, &gamma, &fs)?;
        println!("γ = {gamma}: {{{}, {}, {}}} = {v}", fs[0], fs[1], fs[2]);
    }
    Ok(())
}
