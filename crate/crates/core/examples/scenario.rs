//! Parses and runs a scenario from a string, the same way the binary does.

use npoisson::cli::{parse_scenario, run};

const SCENARIO: &str = "
[chart]
coords = q1 q2 p1 p2

[define]
form omega = d(p1)^d(q1) + d(p2)^d(q2)
constraints cs = q2, p2 - q1
multivector L = e(p1)^e(q1) + q1*e(p2)^e(q2)
multivector K = q1*e(q2)^e(p2)

[tasks]
pb    = power-bracket omega k=1 p1 q1 => 1
quad  = power-bracket omega k=2 p1 q1 p2 q2 => 2
dirac = dirac-matrix omega cs p1 p2 => 1
lam   = check-poisson L => false
kas   = check-poisson K
";

fn main() -> npoisson::Result<()> {
    let scenario = parse_scenario(SCENARIO)?;
    let report = run(&scenario, None)?;
    print!("{}", report.to_text());
    println!();
    print!("{}", report.to_machine());
    Ok(())
}
