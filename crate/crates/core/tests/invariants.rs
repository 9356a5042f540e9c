use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsmzv::classical::{self, Mode};
use qsmzv::coeffring::{rat, HPoly};
use qsmzv::eval::{self, QContext};
use qsmzv::expr::{eval_str, Env, Val};
use qsmzv::freealg::{Index, NCPoly};
use qsmzv::harness::random_element;
use qsmzv::qops;

fn element(max_wt: u32) -> impl Strategy<Value = NCPoly> {
    any::<u64>().prop_map(move |s| random_element(&mut ChaCha8Rng::seed_from_u64(s), max_wt))
}

fn index(max_depth: usize) -> impl Strategy<Value = Index> {
    proptest::collection::vec(1u32..=3, 0..=max_depth).prop_map(Index)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_commute(a in element(3), b in element(3)) {
        prop_assert_eq!(qops::qharm(&a, &b).unwrap(), qops::qharm(&b, &a).unwrap());
        prop_assert_eq!(qops::qshuf(&a, &b), qops::qshuf(&b, &a));
    }

    #[test]
    fn products_associate(a in element(2), b in element(2), c in element(2)) {
        let h = |x: &NCPoly, y: &NCPoly| qops::qharm(x, y).unwrap();
        prop_assert_eq!(h(&h(&a, &b), &c), h(&a, &h(&b, &c)));
        let s = qops::qshuf;
        prop_assert_eq!(s(&s(&a, &b), &c), s(&a, &s(&b, &c)));
    }

    #[test]
    fn psi_is_an_involution(a in element(4)) {
        for mode in [Mode::Star, Mode::Sh] {
            let once = qops::psi_q(&a, mode).unwrap();
            prop_assert_eq!(qops::psi_q(&once, mode).unwrap(), a.clone());
        }
    }

    #[test]
    fn iota_is_multiplicative(a in element(3), b in element(2)) {
        let (ia, ib) = (qops::iota(&a).unwrap(), qops::iota(&b).unwrap());
        prop_assert_eq!(qops::iota(&qops::qharm(&a, &b).unwrap()).unwrap(), classical::harm(&ia, &ib).unwrap());
        prop_assert_eq!(qops::iota(&qops::qshuf(&a, &b)).unwrap(), classical::shuf(&ia, &ib));
    }

    #[test]
    fn truncated_sums_respect_the_harmonic_product(a in element(3), b in element(2), m in 1usize..6) {
        let ctx = QContext::exact(rat(1, 3)).unwrap();
        let z = |w: &NCPoly| eval::zqm(w, m, &ctx).unwrap().as_exact().unwrap().clone();
        prop_assert_eq!(z(&qops::qharm(&a, &b).unwrap()), z(&a) * z(&b));
    }

    #[test]
    fn display_reparses(a in element(4)) {
        // constants print as plain numbers and come back as scalars
        let back = match eval_str(&a.to_string(), &Env::default()).unwrap() {
            Val::Scalar(r) => NCPoly::constant(HPoly::constant(r)),
            Val::Q(p) => p,
            other => panic!("unexpected {other:?}"),
        };
        prop_assert_eq!(back, a);
    }

    #[test]
    fn hoffman_dual_is_an_involution(k in index(4)) {
        prop_assume!(!k.is_empty());
        prop_assert_eq!(k.hoffman_dual().hoffman_dual(), k.clone());
        prop_assert_eq!(k.hoffman_dual().weight(), k.weight());
    }

    #[test]
    fn classical_products_match_d_coefficients(k in index(2), l in index(2)) {
        for mode in [Mode::Star, Mode::Sh] {
            let lhs = classical::product(mode, &classical::ClassicalPoly::z(&k), &classical::ClassicalPoly::z(&l)).unwrap();
            let d = classical::d_coeffs(&k, &l, mode)
                .into_iter()
                .map(|(m, c)| (m, rat(c, 1)))
                .collect();
            prop_assert_eq!(lhs, classical::ClassicalPoly::from_index_map(&d));
        }
    }
}
