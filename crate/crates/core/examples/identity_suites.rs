//! Runs every built-in identity suite and times it.
//!
//! cargo run --release --example identity_suites

use std::time::Instant;

use npoisson::suites::{run_suite, SUITES};

fn main() -> npoisson::Result<()> {
    for (name, about) in SUITES {
        let start = Instant::now();
        let report = run_suite(name, None)?;
        println!("# {about}");
        print!("{report}");
        println!("  ({:.1?})", start.elapsed());
    }
    Ok(())
}
