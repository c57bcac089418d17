use proptest::prelude::*;
use weyl_core::exactnum::{cyclotomic_poly, CycElem, CycField, Rat, TruncSeries, UniPoly};

fn ser(c: &[i64], prec: usize) -> TruncSeries<Rat> {
    TruncSeries::from_coeffs(&(), c.iter().map(|&x| Rat::int(x)).collect(), prec)
}

fn rser(c: &[Rat], prec: usize) -> TruncSeries<Rat> {
    TruncSeries::from_coeffs(&(), c.to_vec(), prec)
}

#[test]
fn roots_of_unity() {
    let f = CycField::new(3).unwrap();
    assert_eq!(CycElem::xi_pow(&f, 1).mul(&CycElem::xi_pow(&f, 2)), CycElem::rat(&f, Rat::one()));
    // (1 + xi)^{-1} = -xi
    let one_xi = CycElem::rat(&f, Rat::one()).add(&CycElem::xi_pow(&f, 1));
    assert_eq!(one_xi.inv().unwrap(), CycElem::xi_pow(&f, 1).neg());
    // k = 2: 1 / (2 (xi^{-1} - 1)) = -1/4
    let f2 = CycField::new(2).unwrap();
    let e = CycElem::xi_pow(&f2, -1).sub(&CycElem::rat(&f2, Rat::one())).scale(&Rat::int(2)).inv().unwrap();
    assert_eq!(e.as_rat(), Some(Rat::frac(-1, 4)));
    assert!(CycElem::zero(&f).inv().is_err());
    assert!(CycField::new(0).is_err());
}

#[test]
fn xi_has_exact_order_k() {
    for k in 1..=12u32 {
        let f = CycField::new(k).unwrap();
        let one = CycElem::rat(&f, Rat::one());
        assert_eq!(CycElem::xi_pow(&f, k as i64), one);
        for j in 1..k as i64 {
            assert_ne!(CycElem::xi_pow(&f, j), one, "k={k} j={j}");
        }
        assert_eq!(f.degree() + 1, cyclotomic_poly(k).len());
    }
}

#[test]
fn cyc_text_round_trip() {
    let f = CycField::new(5).unwrap();
    let a = CycElem::xi_pow(&f, 2).scale(&Rat::frac(-3, 2)).add(&CycElem::rat(&f, Rat::int(7)));
    let back = CycElem::parse(&a.to_string()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn rational_parsing_and_roots() {
    assert_eq!("-6/4".parse::<Rat>().unwrap(), Rat::frac(-3, 2));
    assert!("1/0".parse::<Rat>().is_err());
    assert!("x".parse::<Rat>().is_err());
    assert_eq!(Rat::frac(8, 27).nth_root(3), Some(Rat::frac(2, 3)));
    assert_eq!(Rat::int(2).nth_root(2), None);
    assert_eq!(Rat::int(-8).nth_root(3), Some(Rat::int(-2)));
    assert_eq!(Rat::binomial(-2, 3), Rat::int(-4));
}

#[test]
fn series_examples() {
    assert_eq!(ser(&[1, -1], 4).inv().unwrap(), ser(&[1, 1, 1, 1], 4));
    assert_eq!(ser(&[0, 0, 0, 1], 8).integral(), rser(&[Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::frac(1, 4)], 9));
    assert_eq!(ser(&[0, 2, 0, 1], 8).derivative(), ser(&[2, 0, 3], 7));
    assert_eq!(ser(&[1, 2, 1], 6).nth_root(2).unwrap(), ser(&[1, 1], 6));
    assert_eq!(ser(&[1, 1], 3).pow_rat(&Rat::frac(1, 3)).unwrap(), rser(&[Rat::one(), Rat::frac(1, 3), Rat::frac(-1, 9)], 3));
    assert!(ser(&[2, 1], 4).nth_root(2).is_err());
    assert_eq!(ser(&[], 5).exp().unwrap(), ser(&[1], 5));
    assert_eq!(ser(&[0, 1], 3).exp().unwrap(), rser(&[Rat::one(), Rat::one(), Rat::frac(1, 2)], 3));
    let e = ser(&[0, 1], 8).exp().unwrap().mul(&ser(&[0, -1], 8).exp().unwrap());
    assert_eq!(e, ser(&[1], 8));
    assert_eq!(ser(&[0, 0, 1, 1], 6).valuation(), Some(2));
    assert_eq!(ser(&[3], 6).valuation(), Some(0));
    assert_eq!(ser(&[], 6).valuation(), None);
    assert_eq!(ser(&[], 6).to_string(), "O(x^6)");
}

#[test]
fn series_text_round_trip() {
    let s = rser(&[Rat::frac(1, 2), Rat::zero(), Rat::int(-3)], 5);
    assert_eq!(TruncSeries::parse(&s.to_string()).unwrap(), s);
    assert!(TruncSeries::parse("1 + x").is_err());
}

#[test]
fn polynomial_division_and_gcd() {
    let p = |c: &[i64]| UniPoly::new(&(), c.iter().map(|&x| Rat::int(x)).collect());
    let a = p(&[-1, 0, 1]); // x^2 - 1
    let (q, r) = a.divmod(&p(&[-1, 1])).unwrap();
    assert_eq!((q, r), (p(&[1, 1]), p(&[])));
    assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    assert_eq!(p(&[1, 2, 1]).distinct_roots(), 1);
    assert_eq!(p(&[0, -1, 0, 1]).distinct_roots(), 3);
    assert!(a.divmod(&p(&[])).is_none());
}

fn cyc() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..5, 1i64..4), 1..6)
}

fn elem(f: &std::sync::Arc<CycField>, c: &[(i64, i64)]) -> CycElem {
    let mut e = CycElem::zero(f);
    for (j, &(n, d)) in c.iter().enumerate() {
        e = e.add(&CycElem::xi_pow(f, j as i64).scale(&Rat::frac(n, d)));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(k in 1u32..13, a in cyc(), b in cyc(), c in cyc()) {
        let f = CycField::new(k).unwrap();
        let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), CycElem::rat(&f, Rat::one()));
        }
    }

    #[test]
    fn series_product_laws(a in prop::collection::vec(-5i64..6, 0..8), b in prop::collection::vec(-5i64..6, 0..8),
                           c in prop::collection::vec(-5i64..6, 0..8), pa in 1usize..10, pb in 1usize..10) {
        let (a, b, c) = (ser(&a, pa), ser(&b, pb), ser(&c, 9));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).precision(), pa.min(pb));
    }

    #[test]
    fn nth_root_power_is_identity(tail in prop::collection::vec(-3i64..4, 0..7), d in 1u32..7) {
        let mut c = vec![1];
        c.extend(tail);
        let s = ser(&c, 8);
        let r = s.nth_root(d).unwrap();
        let mut p = ser(&[1], 8);
        for _ in 0..d {
            p = p.mul(&r);
        }
        prop_assert_eq!(p, s);
    }
}
