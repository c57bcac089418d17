use proptest::prelude::*;
use weyl_core::exactnum::Rat;
use weyl_core::newton::*;
use weyl_core::weyl::{parse_weyl, WeylOp};

fn w(s: &str) -> WeylOp<Rat> {
    parse_weyl(s).unwrap()
}

#[test]
fn weight_degrees_and_tops() {
    assert_eq!(weight_degree(&w("x^2*d^3"), &Weight::ints(1, 1)), Some(Rat::int(5)));
    let p = w("x^2 + d");
    assert_eq!(weight_degree(&p, &Weight::ints(2, 3)), Some(Rat::int(4)));
    assert_eq!(top_part(&p, &Weight::ints(2, 3)), BivarPoly::monomial(&(), 2, 0, Rat::one()));
    let q = w("x^2*d + x*d + 1");
    assert_eq!(top_part(&q, &Weight::ints(1, 1)), BivarPoly::monomial(&(), 2, 1, Rat::one()));
    let r = w("x^3*d^2 + x*d^4 + 5");
    assert_eq!(weight_degree(&r, &Weight::ints(0, 1)), r.ord().map(Rat::int));
    assert_eq!(weight_degree(&w("0"), &Weight::ints(1, 1)), None);
    assert!(Weight::new(Rat::zero(), Rat::zero()).is_err());
    assert!(Weight::new(Rat::int(2), Rat::int(-1)).is_ok());
    assert_eq!("1/2,1".parse::<Weight>().unwrap(), Weight::new(Rat::frac(1, 2), Rat::one()).unwrap());
    assert!("1".parse::<Weight>().is_err());
}

#[test]
fn poisson_orientation() {
    // [d, x] = 1 against {y, x} = -1
    let r = check_dixmier(&w("d"), &w("x"), &Weight::ints(1, 1)).unwrap();
    assert!(r.all_ok(), "{r:?}");
    let r = check_dixmier(&w("d^2 + x"), &w("x^3*d"), &Weight::ints(1, 2)).unwrap();
    assert!(r.all_ok(), "{r:?}");
}

#[test]
fn corners_and_subrectangularity() {
    let c = corners(&w("(1 + x)^2*d^3")).unwrap();
    assert_eq!((c.st01, c.en01), ((2, 3), (0, 3)));
    let c = corners(&w("x^4*d^7")).unwrap();
    assert!([c.en10, c.st10, c.en01, c.st01].iter().all(|&p| p == (4, 7)));
    let p = w("x^2*d^3 + x*d^3 + x^2 + 1");
    assert!(is_subrectangular(&p));
    let c = corners(&p).unwrap();
    assert_eq!((c.en10, c.st01, hm(&p)), ((2, 3), (2, 3), Some((2, 3))));
    assert!(!is_subrectangular(&w("x^2 + d^2")));
    assert!(!is_subrectangular(&w("d^3")));
    assert!(corners(&w("0")).is_err());
}

#[test]
fn subrect_pair_data() {
    let sd = subrect_data(&w("x^2*d^6"), &w("x^3*d^9")).unwrap();
    assert_eq!((sd.d, sd.l, sd.n, sd.m, sd.ess_gcd), (3, 1, 2, 3, 3));
    assert_eq!(sd.rate, Some(Rat::frac(2, 3)));
}

#[test]
fn polygon() {
    let pd = polygon_data(&w("x^3 + x*d + d^2 + x*d^2 + 1"), &[Weight::ints(1, 1)]).unwrap();
    assert_eq!(pd.hull, vec![(0, 0), (3, 0), (1, 2), (0, 2)]);
    assert_eq!(pd.tops[0].top, vec![(1, 2), (3, 0)]);
    assert_eq!(convex_hull(&[(0, 0), (1, 1), (2, 2)]), vec![(0, 0), (2, 2)]);
    assert!(polygon_data(&w("0"), &[]).is_err());
}

fn op_strategy() -> impl Strategy<Value = WeylOp<Rat>> {
    prop::collection::vec((0u32..4, 0u32..4, -3i64..4), 1..=6)
        .prop_map(|ts| WeylOp::from_terms(&(), ts.into_iter().map(|(i, j, c)| (i, j, Rat::int(c)))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn weight_strategy() -> impl Strategy<Value = Weight> {
    (0i64..4, 0i64..4, 1i64..3).prop_filter("positive", |(s, r, _)| s + r > 0).prop_map(|(s, r, den)| Weight::new(Rat::frac(s, den), Rat::int(r)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn product_law(p in op_strategy(), q in op_strategy(), wt in weight_strategy()) {
        let pq = p.mul(&q);
        let v = weight_degree(&p, &wt).unwrap();
        let u = weight_degree(&q, &wt).unwrap();
        prop_assert_eq!(weight_degree(&pq, &wt), Some(&v + &u));
        prop_assert_eq!(top_part(&pq, &wt), top_part(&p, &wt).mul(&top_part(&q, &wt)));
    }

    #[test]
    fn dixmier_laws(p in op_strategy(), q in op_strategy(), wt in weight_strategy()) {
        let r = check_dixmier(&p, &q, &wt).unwrap();
        prop_assert!(r.all_ok(), "{:?}", r);
    }

    #[test]
    fn subrectangular_products(a in 1u32..3, b in 1u32..3, c in 1u32..3, e in 1u32..3, p in op_strategy(), q in op_strategy()) {
        // push the corner above everything else
        let p = p.add(&WeylOp::monomial(&(), a + 3, b + 3, Rat::one()));
        let q = q.add(&WeylOp::monomial(&(), c + 3, e + 3, Rat::int(2)));
        prop_assume!(is_subrectangular(&p) && is_subrectangular(&q));
        let (hp, hq) = (hm(&p).unwrap(), hm(&q).unwrap());
        prop_assert_eq!(hm(&p.mul(&q)), Some((hp.0 + hq.0, hp.1 + hq.1)));
    }

    #[test]
    fn hull_contains_extremes(p in op_strategy(), wt in weight_strategy()) {
        let pd = polygon_data(&p, std::slice::from_ref(&wt)).unwrap();
        // the weight degree is attained at a hull vertex
        let best = pd.hull.iter().map(|&(i, j)| wt.of(i, j)).max().unwrap();
        prop_assert_eq!(best, weight_degree(&p, &wt).unwrap());
    }
}
