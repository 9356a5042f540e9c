//! Depth-two symmetric values reduced to a multiple of `Z_q(g_k)`.
//!
//!     cargo run --example depth_two

use qsmzv::harness;

fn main() -> qsmzv::error::Result<()> {
    for k in [3, 5, 7] {
        let sol = harness::depth2_solve(k)?;
        print!("weight {k}:");
        for (m, c) in &sol {
            assert_eq!(*c, harness::depth2_closed_form(k, *m));
            print!(" {c}");
        }
        println!();
    }

    println!("\nζ_q^S(k1,k2) as multiples of Z_q(g_(k1+k2)):");
    for k1 in 1..=5u32 {
        let row: Vec<String> = (1..=5u32)
            .map(|k2| harness::qsmzv_depth2(k1, k2).map(|c| format!("{c:>6}")))
            .collect::<Result<_, _>>()?;
        println!("  k1={k1}: {}", row.join(" "));
    }
    Ok(())
}
