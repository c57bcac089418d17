use std::collections::BTreeMap;

use proptest::prelude::*;
use weyl_core::exactnum::{CycElem, CycField, Rat};
use weyl_core::hcp::{act_word, bracket_solve, from_word, qp_tail, Gen, Hcp, Hcpc, Poly};

fn gen_strategy(k: u32) -> impl Strategy<Value = Gen> {
    prop_oneof![
        Just(Gen::X),
        Just(Gen::D),
        Just(Gen::Int),
        Just(Gen::Delta),
        (0..k).prop_map(Gen::A),
        (-3i64..4).prop_map(|c| Gen::Scalar(CycElem::rat(&CycField::new(1).unwrap(), Rat::int(c)))),
    ]
}

fn fix_field(g: Gen, f: &std::sync::Arc<CycField>) -> Gen {
    match g {
        Gen::Scalar(c) => Gen::Scalar(CycElem::rat(f, c.as_rat().unwrap())),
        g => g,
    }
}

fn mono(f: &std::sync::Arc<CycField>, m: u32) -> Poly {
    let mut p = BTreeMap::new();
    p.insert(m, CycElem::rat(f, Rat::one()));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_acts_like_the_word(k in 1u32..5, word in prop::collection::vec(gen_strategy(4), 0..7)) {
        let f = CycField::new(k).unwrap();
        let word: Vec<Gen> = word.into_iter().map(|g| match g { Gen::A(i) => Gen::A(i % k), g => fix_field(g, &f) }).collect();
        let h = from_word(&word, &f).unwrap();
        for m in 0..9 {
            let want = act_word(&word, &mono(&f, m), &f);
            prop_assert_eq!(h.act_monomial(m), want, "word {:?} at x^{}", word, m);
        }
    }

    #[test]
    fn product_is_associative(k in 1u32..4,
        a in prop::collection::vec(gen_strategy(3), 0..4),
        b in prop::collection::vec(gen_strategy(3), 0..4),
        c in prop::collection::vec(gen_strategy(3), 0..4)) {
        let f = CycField::new(k).unwrap();
        let norm = |w: Vec<Gen>| -> Hcpc {
            let w: Vec<Gen> = w.into_iter().map(|g| match g { Gen::A(i) => Gen::A(i % k), g => fix_field(g, &f) }).collect();
            from_word(&w, &f).unwrap()
        };
        let (a, b, c) = (norm(a), norm(b), norm(c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

#[test]
fn tail_brackets_to_one() {
    for p in 2..=6 {
        let tail = qp_tail(p).unwrap().to_hcpc();
        let f = tail.field().clone();
        let dp = Hcp::shift_op(&f, p as i64).to_hcpc();
        assert_eq!(tail.commutator(&dp).unwrap(), Hcpc::one(&f), "p = {p}");
        assert!(tail.is_totally_free_b());
    }
}

#[test]
fn bracket_solve_recovers_tail() {
    for p in 2..=5 {
        let f = CycField::new(p).unwrap();
        let one = Hcp::shift_op(&f, 0);
        assert_eq!(bracket_solve(p, &one).unwrap(), qp_tail(p).unwrap());
    }
}

#[test]
fn text_round_trip() {
    let t = qp_tail(2).unwrap().to_hcpc();
    let s = t.to_text();
    assert_eq!(s, "1/4*A_0*D^-2 - 1/4*A_1*D^-2 - 1/2*x*A_0*d*D^-2 @2");
    assert_eq!(Hcpc::parse(&s).unwrap(), t);
    let j = t.to_json();
    assert_eq!(Hcpc::from_json(&j).unwrap(), t);
}
