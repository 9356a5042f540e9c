//! The classical algebra: harmonic and shuffle products, ψ, symmetrization,
//! and the map ι from the q-side.
//!
//!     cargo run --example classical_side

use qsmzv::classical::{self, ClassicalPoly, Mode};
use qsmzv::freealg::Index;
use qsmzv::qops;

fn main() -> qsmzv::error::Result<()> {
    let z1 = ClassicalPoly::z(&Index(vec![1]));
    let z2 = ClassicalPoly::z(&Index(vec![2]));
    println!("z[1] * z[2]  = {}", classical::harm(&z1, &z2)?);
    println!("z[1] sh z[2] = {}", classical::shuf(&z1, &z2));
    println!("psi(z[1,2])  = {}", classical::psi(&ClassicalPoly::z(&Index(vec![1, 2])))?);

    let w = ClassicalPoly::z(&Index(vec![2, 1]));
    for mode in [Mode::Star, Mode::Sh] {
        let ws = classical::ws_classical(&w, mode)?;
        println!("wS_{mode}(z[2,1]) = {ws}   truncated at 10: {}", classical::z_m(&ws, 10)?);
    }

    let k = Index(vec![1, 3]);
    println!("iota(E[1,3]) = {}", qops::iota(&qops::e_index(&k))?);
    println!("dual of {k} = {}", k.hoffman_dual());
    Ok(())
}
