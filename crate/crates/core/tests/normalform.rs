use std::time::Instant;

use weyl_core::exactnum::{CycElem, CycField, Rat, TruncSeries};
use weyl_core::hcp::{qp_tail, Gen, Hcp, Hcpc};
use weyl_core::normalform::*;
use weyl_core::weyl::{parse_weyl, D1Op};

fn d1(s: &str, prec: usize) -> D1Op<Rat> {
    D1Op::from_weyl(&parse_weyl(s).unwrap(), prec)
}

#[test]
fn airy_schur_fixture() {
    let t0 = Instant::now();
    let p = d1("d^2 - x", 16);
    let sd = schur(&p, 8).unwrap();
    for t in 1..8i64 {
        let c = sd.s.component(-t).unwrap();
        if c.is_zero() {
            continue;
        }
        let s = c.sdeg_a().unwrap() as f64;
        assert!(t as f64 / 2.0 - 1.0 < s && s < t as f64, "t = {t}, Sdeg_A = {s}");
        assert!(c.is_totally_free_b(), "t = {t}");
    }
    assert!(sd.s.component(-1).unwrap().is_zero());
    assert!(sd.s_inv.component(-1).unwrap().is_zero());
    assert_eq!(sd.s_inv.component(0).unwrap(), Hcp::shift_op(sd.s.field(), 0));
    eprintln!("schur depth 8: {:?}", t0.elapsed());
}

#[test]
fn normal_form_of_the_heisenberg_partner() {
    let p = d1("d^2 - x", 16);
    let sd = schur(&p, 8).unwrap();
    let qt = normal_form(&d1("-d", 16), &sd).unwrap();
    let rep = tail_report(&qt, 2).unwrap();
    assert!(rep.non_central.is_empty(), "{rep:?}");
    assert!(rep.tail_ok && rep.tail_exact, "{rep:?}");
    assert_eq!(qt.component(-2).unwrap(), qp_tail(2).unwrap());
}

#[test]
fn commuting_partner_is_central() {
    let p = d1("d^2 - x", 20);
    let sd = schur(&p, 8).unwrap();
    // P^2 + 3P commutes with P; its normal form is d^4 + 3 d^2
    let qt = normal_form(&d1("(d^2 - x)^2 + 3*(d^2 - x)", 20), &sd).unwrap();
    assert!(qt.is_central(2).unwrap());
    assert_eq!(qt.ord(), Some(4));
    let f = sd.s.field().clone();
    let want = Hcp::shift_op(&f, 4).to_hcpc().add(&Hcp::shift_op(&f, 2).to_hcpc().scale(&CycElem::rat(&f, Rat::int(3)))).unwrap();
    assert_eq!(qt.to_hcpc(), want);
}

#[test]
fn order_three_kdv_ansatz_does_not_commute_with_airy() {
    // d^3 + (3/2) u d + (3/4) u' with u = -x; [Q, P] = (3/2) x since u is not a stationary KdV solution
    let p = parse_weyl("d^2 - x").unwrap();
    let q = parse_weyl("d^3 - 3/2*x*d - 3/4").unwrap();
    assert_eq!(q.commutator(&p), parse_weyl("3/2*x").unwrap());
    let sd = schur(&d1("d^2 - x", 20), 8).unwrap();
    let qt = normal_form(&D1Op::from_weyl(&q, 20), &sd).unwrap();
    assert!(!qt.is_central(2).unwrap());
}

#[test]
fn normal_form_of_p_is_dp() {
    let p = d1("d^2 - x", 16);
    let sd = schur(&p, 6).unwrap();
    let nf = normal_form(&p, &sd).unwrap();
    let f = sd.s.field().clone();
    assert_eq!(nf.to_hcpc(), Hcp::shift_op(&f, 2).to_hcpc());
}

#[test]
fn invert_one_plus_b1() {
    let f = CycField::new(1).unwrap();
    let one = Hcp::shift_op(&f, 0).to_hcpc();
    let b1 = Gen::Delta.to_hcpc(&f);
    let s = GradedOp::from_hcpc(&one.add(&b1).unwrap(), 0, 4);
    let inv = s.invert_unit().unwrap();
    let want = one.add(&b1.scale(&CycElem::rat(&f, Rat::frac(-1, 2)))).unwrap();
    assert_eq!(inv.to_hcpc(), want);
}

#[test]
fn endo_operator_examples() {
    let f = CycField::new(2).unwrap();
    let xi = CycElem::xi_pow(&f, 1);
    let one = CycElem::rat(&f, Rat::one());
    let u = TruncSeries::monomial(&f, 1, xi.sub(&one), 8);
    let g = endo_operator(&u, 5).unwrap();
    assert_eq!(g.to_hcpc(), Gen::A(1).to_hcpc(&f));

    let f1 = CycField::new(1).unwrap();
    let u = TruncSeries::monomial(&f1, 2, CycElem::rat(&f1, Rat::one()), 10);
    let g = endo_operator(&u, 5).unwrap();
    for i in 0..5u32 {
        let want = Hcp::atom_x(&f1, 2 * i, 0, -(i as i64), CycElem::rat(&f1, Rat::from(Rat::factorial(i)).inv().unwrap()));
        assert_eq!(g.component(-(i as i64)).unwrap(), want);
    }
    let z = TruncSeries::zero(&f1, 6);
    assert_eq!(endo_operator(&z, 4).unwrap().to_hcpc(), Hcpc::one(&f1));
}

#[test]
fn normalize_examples() {
    let p = d1("d^2 - x", 12);
    let (ch, pn) = normalize(&p, 12).unwrap();
    assert!(ch.is_identity());
    assert_eq!(pn.truncate(10), p.truncate(10));

    let p = d1("d^2 + x*d + x^2", 14);
    let (ch, pn) = normalize(&p, 14).unwrap();
    assert!(is_normalized(&pn));
    let back = ch.inverse().unwrap().apply(&pn).unwrap();
    let k = back.precision();
    assert!(k >= 6);
    assert_eq!(back, p.truncate(k));

    let p = d1("(1 + x)*d^2", 14);
    let (_, pn) = normalize(&p, 14).unwrap();
    assert!(is_normalized(&pn));
    assert!(normalize(&d1("2*d^2", 8), 8).is_err());
}

#[test]
fn condition_examples() {
    let q = 3;
    let dq = GradedOp::from_weyl(&parse_weyl("d^3").unwrap(), q, 4).unwrap();
    assert!(condition_aq(&dq, q, 0).is_ok());
    let xd = GradedOp::from_weyl(&parse_weyl("x*d^4").unwrap(), q, 4).unwrap();
    assert!(condition_aq(&xd, q, 1).is_ok());
    assert_eq!(condition_aq(&xd, q, 0).unwrap_err().clause, 4);
}

#[test]
fn regularity_examples() {
    assert_eq!(is_regular_d1(&d1("d^3 + x", 6)), Regularity::Regular);
    let dk = GradedOp::from_weyl(&parse_weyl("d^4").unwrap(), 1, 3).unwrap();
    assert_eq!(is_regular(&dk), Regularity::Regular);
    let f = CycField::new(3).unwrap();
    let h = Hcp::new(&f, 0, [((1, 1), CycElem::rat(&f, Rat::one())), ((0, 2), CycElem::rat(&f, Rat::int(2)))], []).unwrap();
    assert_eq!(is_regular(&GradedOp::from_hcpc(&h.to_hcpc(), 0, 2)), Regularity::Undetermined);
    let int = GradedOp::from_hcpc(&Gen::Int.to_hcpc(&f), -1, 2);
    assert_eq!(is_regular(&int), Regularity::Irregular);
    assert_eq!(is_regular_d1(&d1("x*d^2", 6)), Regularity::Irregular);
}
