//! Truncated sums `Z_{q,M}`, their symmetric versions and the limit `Z_q`.
//!
//!     cargo run --example truncated_values

use qsmzv::classical::Mode;
use qsmzv::coeffring::rat;
use qsmzv::eval::{self, QContext};
use qsmzv::freealg::{Index, NCPoly};
use qsmzv::qops;

fn main() -> qsmzv::error::Result<()> {
    let half = QContext::exact(rat(1, 2))?;
    let g2 = NCPoly::g(2);

    for m in 1..=4 {
        println!("Z_(1/2,{m})(g[2]) = {}", eval::zqm(&g2, m, &half)?);
    }

    // The symmetric sums agree with their direct double-sum definition.
    let w = NCPoly::g_index(&Index(vec![1, 2]));
    for mode in [Mode::Star, Mode::Sh] {
        let via_ws = eval::zsqm(&w, 6, mode, &half)?;
        let direct = eval::zsqm_direct(&w, 6, mode, &half)?;
        assert_eq!(via_ws, direct);
        println!("ZS_{mode}(g[1,2]) at M=6: {via_ws}");
    }

    // Products of truncated sums follow the harmonic product exactly.
    let a = NCPoly::g(1);
    let lhs = eval::zqm(&qops::qharm(&a, &g2)?, 5, &half)?;
    let rhs = eval::zqm(&a, 5, &half)?.to_f64() * eval::zqm(&g2, 5, &half)?.to_f64();
    println!("Z(g1 *ħ g2) = {lhs} ≈ {rhs}");

    // Convergent values in floating point with a certified tail.
    for q in [0.5, 0.9, 0.999] {
        let r = eval::zq(&g2, &QContext::float(q)?.with_tol(1e-12))?;
        println!("Z_{q}(g[2]) = {} (tail ≤ {:.1e}, M = {})", r.value, r.tail_bound, r.m_used);
    }
    println!("zeta(2)       = {}", std::f64::consts::PI.powi(2) / 6.0);
    Ok(())
}
