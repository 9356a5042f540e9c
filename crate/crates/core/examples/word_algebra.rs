//! The q-word algebra: letters, the two products, the involutions and the
//! symmetrizers.
//!
//!     cargo run --example word_algebra

use qsmzv::classical::Mode;
use qsmzv::freealg::{Index, NCPoly, Space};
use qsmzv::qops;

fn main() -> qsmzv::error::Result<()> {
    let g1 = NCPoly::g(1);
    let g2 = NCPoly::g(2);
    let e2 = NCPoly::e(2);

    println!("H        = {}", NCPoly::h());
    println!("e[2]     = {e2}");
    println!("g[1]g[2] = {}", &g1 * &g2);

    // The harmonic product is commutative; the shuffle carries ħ-corrections.
    let harm = qops::qharm(&g1, &g2)?;
    assert_eq!(harm, qops::qharm(&g2, &g1)?);
    println!("g[1] *ħ g[2]  = {harm}");
    println!("g[1] shħ g[1] = {}", qops::qshuf(&g1, &g1));

    // ψ is an involution in both flavours.
    for mode in [Mode::Star, Mode::Sh] {
        let w = NCPoly::g_index(&Index(vec![1, 2]));
        let once = qops::psi_q(&w, mode)?;
        assert_eq!(qops::psi_q(&once, mode)?, w);
        println!("psi_{mode}(g[1,2]) = {once}");
    }

    // Symmetrized words and the E-basis.
    let ws = qops::ws_q(&NCPoly::g_index(&Index(vec![2, 1])), Mode::Star)?;
    println!("wS_star(g[2,1]) = {ws}");
    let e13 = qops::e_index(&Index(vec![1, 3]));
    println!("E[1,3] = {e13}");
    let d = qops::decompose_e(&e13, None, None)?;
    println!("E-coordinates of E[1,3]: {:?} (exact: {})", d.coeffs, d.is_exact());

    for (name, w) in [("g[2]", g2.clone()), ("H", NCPoly::h()), ("hbar*g[1]", &NCPoly::hbar() * &g1)] {
        println!(
            "{name:>10}: Hhat0={} n={}",
            w.membership(Space::Hhat0)?,
            w.membership(Space::N)?
        );
    }
    Ok(())
}
