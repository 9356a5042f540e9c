//! Runs every verification suite and prints a one-line summary for each.
//!
//!     cargo run --release --example verification [suite...]

use std::time::Instant;

use qsmzv::harness::{self, Params};

fn main() -> qsmzv::error::Result<()> {
    let wanted: Vec<String> = std::env::args().skip(1).collect();
    for name in harness::SUITES {
        if !wanted.is_empty() && !wanted.iter().any(|w| w == name) {
            continue;
        }
        let t = Instant::now();
        let rep = harness::run_suite(name, &Params::new())?;
        let s = rep.summary;
        println!(
            "{name:<17} pass {:>4}  fail {:>2}  skip {:>2}  {:>6.2}s",
            s.pass,
            s.fail,
            s.skip,
            t.elapsed().as_secs_f64()
        );
        for c in rep.failures() {
            println!("    {}: {} vs {} {}", c.id, c.lhs, c.rhs, c.detail);
        }
    }
    Ok(())
}
