//! The behaviour of `Z_q(w)` as `q → 1`, against classical zeta values.
//!
//!     cargo run --release --example limits

use qsmzv::eval;
use qsmzv::freealg::{Index, NCPoly};
use qsmzv::harness::zeta_float;

fn main() -> qsmzv::error::Result<()> {
    let grid = [0.5, 0.9, 0.99, 0.999];
    let cases = [
        ("g[2]", NCPoly::g(2), Some(Index(vec![2]))),
        ("g[2,3]", NCPoly::g_index(&Index(vec![2, 3])), Some(Index(vec![2, 3]))),
        ("H g[2]", &NCPoly::h() * &NCPoly::g(2), None),
    ];
    for (name, w, classical) in cases {
        println!("{name}");
        for r in eval::limit_probe(&w, &grid, 1e-12)? {
            let scaled = r.scaled.map(|s| format!("  scaled {s:.6}")).unwrap_or_default();
            println!("  q = {:<6} Z_q = {:.12}  (M = {}){scaled}", r.q, r.value, r.m_used);
        }
        if let Some(k) = classical {
            println!("  classical value {:.12}", zeta_float(&k, 200_000));
        }
    }
    Ok(())
}
