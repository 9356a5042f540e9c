//! The expression language behind `qsmzv eval`.
//!
//!     cargo run --example expressions

use qsmzv::eval::QContext;
use qsmzv::expr::{eval_str, Env};

fn main() {
    let env = Env::new(QContext::parse("1/2").unwrap(), 6);
    for src in [
        "ZqM(g[2], 3)",
        "ZqM(qshuf(g[1], g[1]))",
        "qharm(g[1], g[2]) - qharm(g[2], g[1])",
        "psish(E[1,2])",
        "wS(star, g[1,2])",
        "iota(E[1,3])",
        "harm(z[1], z[1,1])",
        "ZSqM(sh, g[1,2]) * 2",
        "Zq(g[2])",
        "harm(g[1], g[1])",
        "qharm(g[1],",
    ] {
        match eval_str(src, &env) {
            Ok(v) => println!("{src:<40} = {v}"),
            Err(e) => println!("{src:<40} ! {e}"),
        }
    }
}
