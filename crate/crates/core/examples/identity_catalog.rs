//! Checks the generating-series identity catalog coefficient by coefficient.
//!
//!     cargo run --release --example identity_catalog [order]

use qsmzv::freealg::NCPoly;
use qsmzv::series::{self, IdentityId, Param};

fn main() -> qsmzv::error::Result<()> {
    let order = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);

    for id in IdentityId::ALL {
        let rep = series::check_identity(id, order, &[])?;
        println!(
            "{id:>4}  {:>3} pass {:>2} fail  {}",
            rep.summary.pass,
            rep.summary.fail,
            id.describe()
        );
    }

    // A single instance with explicit word parameters.
    let params = [Param::Word(NCPoly::g(2)), Param::Word(NCPoly::h())];
    let rep = series::check_identity(IdentityId::B1, order, &params)?;
    println!("\nB1 with w = g[2], w' = H: {}", if rep.all_passed() { "ok" } else { "FAILED" });
    Ok(())
}
