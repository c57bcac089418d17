use proptest::prelude::*;
use weyl_core::exactnum::{Rat, TruncSeries};
use weyl_core::weyl::{parse_tame_word, parse_weyl, weyl_from_json, weyl_to_json, word_to_endo, D1Op, Endo, TameGen, WeylOp};

fn w(s: &str) -> WeylOp<Rat> {
    parse_weyl(s).unwrap()
}

/// `P x^m` through the series action, exact for large enough precision.
fn act(p: &WeylOp<Rat>, m: usize) -> TruncSeries<Rat> {
    let prec = m + p.ord_x().unwrap_or(0) as usize + 2;
    D1Op::from_weyl(p, prec).apply(&TruncSeries::monomial(&(), m, Rat::one(), prec))
}

#[test]
fn products() {
    assert_eq!(w("d").mul(&w("x")), w("x*d + 1"));
    assert_eq!(w("d^2").mul(&w("x^2")), w("x^2*d^2 + 4*x*d + 2"));
    assert_eq!(w("x*d").mul(&w("x*d")), w("x^2*d^2 + x*d"));
    assert_eq!(w("d*x"), w("x*d + 1"));
}

#[test]
fn commutators() {
    assert_eq!(w("d").commutator(&w("x")), w("1"));
    assert_eq!(w("d^2").commutator(&w("x")), w("2*d"));
    assert_eq!(w("d + 3*x^4").commutator(&w("x")), w("1"));
}

#[test]
fn orders() {
    let p = w("x^5*d^2 + d^3");
    assert_eq!((p.ord(), p.ord_x(), p.bord()), (Some(3), Some(5), Some(3)));
    let p = w("x^5*d^2");
    assert_eq!((p.ord(), p.ord_x(), p.bord()), (Some(2), Some(5), Some(-3)));
    let p = w("d^4 + x^2*d + 7");
    assert_eq!(p.bord(), p.ord());
    assert_eq!(w("0").ord(), None);
}

#[test]
fn endomorphisms() {
    let id = Endo::identity(&());
    assert_eq!(id.apply(&w("x*d^2 + 3")), w("x*d^2 + 3"));
    let e = TameGen::PhiPrime { n: 2, lambda: Rat::one() }.to_endo();
    assert_eq!(e.apply(&w("x*d")), w("x*d + x^3"));
    let e = TameGen::Phi { n: 1, lambda: Rat::one() }.to_endo();
    assert_eq!(e.apply(&w("x")), w("x + d"));
    let e = TameGen::Phi { n: 2, lambda: Rat::one() }.to_endo();
    assert_eq!((e.img_x.clone(), e.img_d.clone()), (w("x + d^2"), w("d")));
    assert!(TameGen::linear(Rat::one(), Rat::zero(), Rat::zero(), Rat::one()).unwrap().to_endo().is_identity());
    assert!(TameGen::linear(Rat::int(2), Rat::zero(), Rat::zero(), Rat::one()).is_err());
    assert!(Endo::new(w("x^2"), w("d")).is_err());
    // Phi'_{1,1} o Phi_{2,1} on x
    let e = word_to_endo(&parse_tame_word("PhiP(1,1) Phi(2,1)").unwrap());
    assert_eq!(e.img_x, w("x + (d + x)^2"));
    assert_eq!(e.compose(&Endo::identity(&())).img_x, e.img_x);
}

#[test]
fn d1_heads() {
    let p = D1Op::from_weyl(&w("d^3 + x*d"), 6);
    assert!(p.is_monic());
    let p = D1Op::from_weyl(&w("(2 + x)*d^2"), 6);
    assert!(!p.is_elliptic());
    let p = D1Op::from_weyl(&w("5*d^4 + x"), 6);
    assert!(p.is_elliptic() && !p.is_monic());
}

#[test]
fn text_and_json() {
    let p = w("-1/2*x^3*d + (d - x)^2 - 4");
    assert_eq!(w(&p.to_string()), p);
    assert_eq!(weyl_from_json(&weyl_to_json(&p)).unwrap(), p);
    for bad in ["", "x^", "d +", "2/0", "(x", "y", "x^99999999999"] {
        assert!(parse_weyl(bad).is_err(), "{bad:?}");
    }
    let word = parse_tame_word("Lin(0,1,-1,0) Phi(2,3) PhiP(0,-1/2)").unwrap();
    let text: Vec<String> = word.iter().map(|g| g.to_string()).collect();
    assert_eq!(parse_tame_word(&text.join(" ")).unwrap(), word);
    assert!(parse_tame_word("Lin(1,1,1,1)").is_err());
}

fn op_strategy(max_terms: usize) -> impl Strategy<Value = WeylOp<Rat>> {
    prop::collection::vec((0u32..4, 0u32..4, -4i64..5, 1i64..3), 0..=max_terms)
        .prop_map(|ts| WeylOp::from_terms(&(), ts.into_iter().map(|(i, j, n, d)| (i, j, Rat::frac(n, d)))))
}

fn gen_strategy() -> impl Strategy<Value = TameGen> {
    prop_oneof![
        (0u32..4, -3i64..4).prop_map(|(n, l)| TameGen::Phi { n, lambda: Rat::int(l) }),
        (0u32..4, -3i64..4).prop_map(|(n, l)| TameGen::PhiPrime { n, lambda: Rat::int(l) }),
        (-3i64..4).prop_map(|t| TameGen::linear(Rat::one(), Rat::int(t), Rat::zero(), Rat::one()).unwrap()),
        Just(TameGen::fourier()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in op_strategy(6), b in op_strategy(6), c in op_strategy(6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn action_is_faithful_and_multiplicative(a in op_strategy(5), b in op_strategy(5)) {
        let bound = 8;
        let same = (0..bound).all(|m| act(&a, m) == act(&b, m));
        prop_assert_eq!(same, a == b);
        // (ab) x^m = a (b x^m)
        for m in 0..4 {
            let prec = m + 12;
            let lhs = D1Op::from_weyl(&a.mul(&b), prec).apply(&TruncSeries::monomial(&(), m, Rat::one(), prec));
            let inner = D1Op::from_weyl(&b, prec).apply(&TruncSeries::monomial(&(), m, Rat::one(), prec));
            let rhs = D1Op::from_weyl(&a, inner.precision()).apply(&inner);
            let p = lhs.precision().min(rhs.precision());
            prop_assert_eq!(lhs.truncate(p), rhs.truncate(p));
        }
    }

    #[test]
    fn ord_is_additive_on_products(a in op_strategy(5), b in op_strategy(5)) {
        if let (Some(x), Some(y)) = (a.ord(), b.ord()) {
            // symbols multiply without cancellation in a domain
            prop_assert_eq!(a.mul(&b).ord(), Some(x + y));
        }
    }

    #[test]
    fn generators_invert_and_preserve_the_relation(g in gen_strategy(), p in op_strategy(4)) {
        let e = g.to_endo();
        prop_assert!(e.compose(&g.inverse().to_endo()).is_identity());
        prop_assert_eq!(e.img_d.commutator(&e.img_x), WeylOp::one(&()));
        let back = g.inverse().to_endo();
        prop_assert_eq!(e.apply(&back.apply(&p)), p);
    }

    #[test]
    fn text_round_trip(p in op_strategy(6)) {
        prop_assert_eq!(parse_weyl(&p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(weyl_from_json(&weyl_to_json(&p)).unwrap(), p);
    }
}
