use qsmzv::coeffring::rat;
use qsmzv::error::Error;
use qsmzv::eval::{QContext, Value};
use qsmzv::expr::{eval_str, Env, Val};

fn env(q: &str, m: usize) -> Env {
    Env::new(QContext::parse(q).unwrap(), m)
}

#[test]
fn truncated_value_of_g2() {
    assert_eq!(eval_str("ZqM(g[2])", &env("1/2", 3)).unwrap(), Val::Num(Value::Exact(rat(5, 18))));
}

#[test]
fn iota_of_e_word() {
    assert_eq!(eval_str("iota(E[1,3])", &Env::default()).unwrap().to_string(), "z[1,3]");
}

#[test]
fn parse_error_points_past_the_end() {
    match eval_str("qharm(g[1],", &Env::default()) {
        Err(Error::Parse { offset, .. }) => assert_eq!(offset, 12),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn classical_product_on_q_words_is_a_type_error() {
    assert!(matches!(eval_str("harm(g[1], g[2])", &Env::default()), Err(Error::Type(_))));
    assert!(matches!(eval_str("qharm(z[1], z[2])", &Env::default()), Err(Error::Type(_))));
}

#[test]
fn floating_limit_near_one() {
    let mut ctx = QContext::parse("0.999").unwrap();
    ctx = ctx.with_tol(1e-12);
    let v = eval_str("Zq(g[2])", &Env::new(ctx, 6)).unwrap();
    let Val::Num(v) = v else { panic!("expected a number") };
    assert!((v.to_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 0.05);
}

#[test]
fn symmetric_truncations_by_mode() {
    let e = env("1/2", 6);
    // Z^{S,sh}_{q,M}(e1) = (1-q)(M-1)
    assert_eq!(eval_str("ZSqM(sh, e[1])", &e).unwrap(), Val::Num(Value::Exact(rat(5, 2))));
    assert_eq!(
        eval_str("ZSqM(star, g[1,2])", &e).unwrap(),
        eval_str("kontsevich(g[1,2])", &e).unwrap()
    );
}
