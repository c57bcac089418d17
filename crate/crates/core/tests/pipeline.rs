use weyl_core::exactnum::{Rat, UniPoly};
use weyl_core::newton::BivarPoly;
use weyl_core::pipeline::*;
use weyl_core::weyl::{parse_tame_word, parse_weyl, word_to_endo, TameGen, WeylOp};

fn w(s: &str) -> WeylOp<Rat> {
    parse_weyl(s).unwrap()
}

fn upoly(c: &[i64]) -> UniPoly<Rat> {
    UniPoly::new(&(), c.iter().map(|&x| Rat::int(x)).collect())
}

#[test]
fn ode_one_root_induction_shape() {
    // g = (1 + alpha x)^l, A = (m-1)(n-1), d~ = d, z~ = d(mn - m - n), c~ = 1/d
    for (d, n, m, l, alpha) in [(3i64, 2i64, 3i64, 1u32, 2i64), (4, 3, 4, 3, -1), (5, 2, 5, 2, 3), (3, 4, 3, 2, 1)] {
        let shape = PairShape::new(d, n, m, l as i64, Rat::int(alpha)).unwrap();
        let g = shape.g();
        let a = ((m - 1) * (n - 1)) as u32;
        let z = d * (m * n - m - n);
        let sol = poly_ode_solve(&g, a, d, z, &Rat::frac(1, d)).unwrap().expect("solvable");
        assert!(sol.kernel.is_none());
        let e = l * a - l + 1;
        let base = UniPoly::new(&(), vec![Rat::one(), Rat::int(alpha)]).pow(e);
        // H = c' (1 + alpha x)^{lA - l + 1}
        let c = &sol.particular.coeff(0) / &base.coeff(0);
        assert_eq!(sol.particular, base.scale(&c));
        assert_eq!(sol.particular.degree(), Some(e as usize));
    }
}

#[test]
fn ode_two_roots_refuted() {
    let g = upoly(&[0, -1, 1]); // x (x - 1)
    for a in 0..4u32 {
        let z = (a as i64 - 1) * 3;
        assert_eq!(poly_ode_solve(&g, a, 3, z, &Rat::one()).unwrap(), None);
        assert_eq!(poly_ode_solve_dense(&g, a, 3, z, &Rat::one()).unwrap(), None);
    }
    // d = 1: decided by the dense system
    for a in 0..4u32 {
        let z = a as i64 - 1;
        let fast = poly_ode_solve(&g, a, 1, z, &Rat::int(2)).unwrap();
        let dense = poly_ode_solve_dense(&g, a, 1, z, &Rat::int(2)).unwrap();
        match (&fast, &dense) {
            (Some(x), Some(y)) => assert!(x.same_set(y)),
            (None, None) => {}
            _ => panic!("A = {a}: {fast:?} vs {dense:?}"),
        }
        if let Some(s) = &fast {
            assert_eq!(ode_lhs(&s.particular, &g, &Rat::int(z + 1)), g.pow(a).scale(&Rat::int(2)));
        }
    }
}

#[test]
fn ode_precondition() {
    assert!(poly_ode_solve(&upoly(&[1, 1]), 2, 3, 4, &Rat::one()).is_err());
    assert!(poly_ode_solve(&upoly(&[]), 2, 3, 3, &Rat::one()).is_err());
}

#[test]
fn ode_free_parameter() {
    // g = x^2, d = 1, A = 1: kappa = 1, kernel g^1 = x^2
    let g = upoly(&[0, 0, 1]);
    let s = poly_ode_solve(&g, 1, 1, 0, &Rat::one()).unwrap().unwrap();
    assert_eq!(s.kernel, Some(g.clone()));
    assert!(s.same_set(&poly_ode_solve_dense(&g, 1, 1, 0, &Rat::one()).unwrap().unwrap()));
}

#[test]
fn recursion_examples() {
    // phi = Phi'_{1,1} o Phi_{2,1}
    let e = word_to_endo(&parse_tame_word("PhiP(1,1) Phi(2,1)").unwrap());
    let t = fi_recursion(&e.img_x, &e.img_d, 8, None).unwrap();
    assert_eq!(e.img_x, w("x + (d + x)^2"));
    assert_eq!(t.steps[0].n, Some(2));
    assert_eq!(t.steps[0].m, Some(1));
    assert_eq!(t.steps[0].eps, Some(Rat::one()));
    assert_eq!(t.steps[1].q, w("-x"));
    assert_eq!(t.stop, StopReason::OrderBelowOne);
    assert!(t.steps_cancel());
    assert_eq!(t.steps[1].f, BivarPoly::from_terms(&(), [(0, 2, Rat::one()), (1, 0, Rat::int(-1))]));

    let t = fi_recursion(&w("d^2"), &w("d^3"), 8, None).unwrap();
    assert_eq!((t.steps[0].n, t.steps[0].m, t.steps[0].eps.clone()), (Some(2), Some(3), Some(Rat::one())));
    assert!(t.steps[1].q.is_zero());
    assert_eq!(t.stop, StopReason::Zero);
    // with commuting inputs Q_i = F_i(P, Q)
    for s in &t.steps {
        assert_eq!(eval_bivar(&s.f, &w("d^2"), &w("d^3")), s.q);
    }
}

#[test]
fn recursion_commuting_partner_ends_in_a_constant() {
    let p = w("d^2 + x*d^2 + 3");
    let q = p.pow(3).scale(&Rat::int(2)).add(&p.scale(&Rat::int(5))).add(&w("7"));
    let t = fi_recursion(&p, &q, 16, None).unwrap();
    let last = t.steps.last().unwrap();
    assert!(last.ord.is_none_or(|o| o < 1), "{:?}", t.stop);
}

#[test]
fn recursion_tracks_divisibility() {
    let shape = PairShape::new(3, 2, 1, 1, Rat::one()).unwrap();
    assert_eq!((shape.p, shape.q, shape.d2), (6, 3, 3));
    let t = fi_recursion(&w("d^6 + x"), &w("d^3 + x*d"), 4, Some(&shape)).unwrap();
    assert_eq!(t.steps[0].divisible_by_d2, None);
    assert_eq!(t.steps[1].divisible_by_d2, Some(false));
    assert!(PairShape::new(2, 2, 4, 1, Rat::one()).is_err());
    assert!(PairShape::new(2, 1, 3, 2, Rat::one()).is_err());
}

#[test]
fn recursion_non_proportional_start() {
    let t = fi_recursion(&w("x*d^2"), &w("d^2"), 8, None).unwrap();
    assert_eq!(t.steps.len(), 1);
    assert_eq!(t.stop, StopReason::NotProportional);
    assert!(fi_recursion(&w("x"), &w("d"), 8, None).is_err());
}

#[test]
fn twisted_top_example() {
    let t = twisted_top(&w("x^2*d^4"), 1, &Rat::one(), &Rat::frac(1, 2)).unwrap();
    assert_eq!(t.image, w("(x + d)^2*d^4"));
    assert!(t.top_line.coeff(0, 6) != Rat::zero());
    assert_eq!(t.eps_part, BivarPoly::monomial(&(), 0, 6, Rat::one()));
    assert!(t.monomial);
    assert!(twisted_top(&w("x^2*d^4"), 1, &Rat::zero(), &Rat::frac(1, 2)).is_err());
    assert!(twisted_top(&w("x^2*d^4"), 1, &Rat::one(), &Rat::one()).is_err());
    let (v, c) = twisted_axis_coeff(&w("x^2*d^4 - x*d^5"), 1, &Rat::frac(1, 2)).unwrap();
    assert_eq!(v, 6);
    assert_eq!(c, UniPoly::new(&(), vec![Rat::zero(), Rat::int(-1), Rat::one()]));
}

#[test]
fn twisted_top_of_subrectangular_has_unique_vertex() {
    let f = w("3*x^2*d^3 + x*d^2 + d - 2*x^2");
    let t = twisted_top(&f, 2, &Rat::int(-2), &Rat::frac(1, 2)).unwrap();
    assert!(t.monomial);
    assert_eq!(t.eps_part.terms().keys().next(), Some(&(0, 7)));
}

#[test]
fn twist_arithmetic_on_a_synthetic_pair() {
    // d = 3, l = 1, n = 1, m = 2
    let p = w("x*d^3 + 2*d + x");
    let q = w("x^2*d^6 - d^2 + 5");
    let rep = twist_pair(&p, &q, 1, &Rat::int(2)).unwrap();
    assert_eq!(rep.predicted_p, 3 * 2 * (3 + 1));
    assert!(rep.holds(), "{rep:?}");
}

#[test]
fn decompose_examples() {
    assert_eq!(decompose_automorphism(&w("x"), &w("d"), 64).unwrap(), vec![]);
    assert_eq!(decompose_automorphism(&w("x"), &w("d + x^3"), 64).unwrap(), vec![TameGen::PhiPrime { n: 3, lambda: Rat::one() }]);
    let cert = decompose_automorphism(&w("x^2"), &w("d"), 64).unwrap_err();
    assert!(cert.reason.contains("not an endomorphism"));
    let word = parse_tame_word("Lin(0,1,-1,0) Phi(2,3) PhiP(3,-1/2) Phi(1,1)").unwrap();
    let e = word_to_endo(&word);
    let back = word_to_endo(&decompose_automorphism(&e.img_x, &e.img_d, 64).unwrap());
    assert_eq!((back.img_x, back.img_d), (e.img_x, e.img_d));
}

#[test]
fn suite_is_deterministic_and_passes() {
    let b = SuiteBounds { k_max: 3, idx: 3, a_max: 2, cases: 8, inject: None };
    let r1 = lemma_suite(7, &b);
    assert!(r1.all_pass(), "{r1}");
    assert_eq!(r1, lemma_suite(7, &b));
    let ids: Vec<&str> = r1.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn suite_isolates_an_injected_fault() {
    for target in ["identity.4", "qp_tail", "ode"] {
        let b = SuiteBounds { k_max: 2, idx: 2, a_max: 2, cases: 4, inject: Some(target.into()) };
        let r = lemma_suite(1, &b);
        assert_eq!(r.failing(), vec![target], "{r}");
    }
    assert_eq!("k=2,cases=5".parse::<SuiteBounds>().unwrap().cases, 5);
    assert!("k=0".parse::<SuiteBounds>().is_err());
    assert!("z=1".parse::<SuiteBounds>().is_err());
}
