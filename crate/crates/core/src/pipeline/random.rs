//! Seeded generators for randomized checks.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{CycElem, CycField, Rat, UniPoly};
use crate::hcp::{Gen, Hcp, Hcpc};
use crate::newton::Weight;
use crate::normalform::{condition_aq, GradedOp};
use crate::weyl::{TameGen, WeylOp};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-seed for a named check, so checks do not share streams.
pub fn sub_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

pub fn small_rat(r: &mut impl Rng, nonzero: bool) -> Rat {
    loop {
        let num = r.gen_range(-3..=3);
        let den = if r.gen_bool(0.25) { r.gen_range(1..=3) } else { 1 };
        if !nonzero || num != 0 {
            return Rat::frac(num, den);
        }
    }
}

pub fn weyl(r: &mut impl Rng, max_deg: u32, max_terms: usize) -> WeylOp<Rat> {
    let n = r.gen_range(1..=max_terms);
    let mut p = WeylOp::zero(&());
    for _ in 0..n {
        p.add_term(r.gen_range(0..=max_deg), r.gen_range(0..=max_deg), &small_rat(r, true));
    }
    if p.is_zero() {
        p = WeylOp::monomial(&(), r.gen_range(0..=max_deg), r.gen_range(0..=max_deg), Rat::one());
    }
    p
}

/// Pairs for the commutator weight laws; about a third have proportional tops by construction.
pub fn dixmier_pair(r: &mut impl Rng) -> (WeylOp<Rat>, WeylOp<Rat>) {
    let p = weyl(r, 3, 4);
    let q = match r.gen_range(0..3) {
        0 => p.pow(r.gen_range(1..=2)).scale(&small_rat(r, true)).add(&weyl(r, 1, 2)),
        _ => weyl(r, 3, 4),
    };
    (p, q)
}

pub fn weight(r: &mut impl Rng) -> Weight {
    loop {
        let s = r.gen_range(-2..=3i64);
        let t = r.gen_range(-2..=3i64);
        if s + t > 0 {
            if r.gen_bool(0.2) {
                let den = r.gen_range(2..=3);
                if let Ok(w) = Weight::new(Rat::frac(s, den), Rat::int(t)) {
                    return w;
                }
            }
            return Weight::ints(s, t);
        }
    }
}

pub fn gen_word(r: &mut impl Rng, field: &Arc<CycField>, max_len: usize) -> Vec<Gen> {
    let k = field.conductor();
    let len = r.gen_range(0..=max_len);
    (0..len)
        .map(|_| match r.gen_range(0..6) {
            0 => Gen::X,
            1 => Gen::D,
            2 => Gen::Int,
            3 => Gen::Delta,
            4 => Gen::A(r.gen_range(0..k)),
            _ => Gen::Scalar(CycElem::rat(field, small_rat(r, true))),
        })
        .collect()
}

/// Tame word with `n <= 3`, `|lambda| <= 3`; linear factors are shears or the Fourier swap.
pub fn tame_word(r: &mut impl Rng, max_len: usize) -> Vec<TameGen> {
    let len = r.gen_range(0..=max_len);
    (0..len)
        .map(|_| match r.gen_range(0..5) {
            0 | 1 => TameGen::Phi { n: r.gen_range(0..=3), lambda: small_rat(r, true) },
            2 | 3 => TameGen::PhiPrime { n: r.gen_range(0..=3), lambda: small_rat(r, true) },
            _ => {
                if r.gen_bool(0.5) {
                    TameGen::fourier()
                } else {
                    let t = Rat::int(r.gen_range(-3..=3));
                    TameGen::Linear { a: Rat::one(), b: t, c: Rat::zero(), d: Rat::one() }
                }
            }
        })
        .collect()
}

pub fn poly(r: &mut impl Rng, max_deg: usize) -> UniPoly<Rat> {
    loop {
        let deg = r.gen_range(0..=max_deg);
        let c: Vec<Rat> = (0..=deg).map(|_| Rat::int(r.gen_range(-3..=3))).collect();
        let p = UniPoly::new(&(), c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Graded element over modulus `q` satisfying condition `A_q(k)`, by construction then checked.
///
/// Symbol `sum_{l <= k} c_l x^l d^l D^r` with `c_k != 0`; the component of order `r - i`
/// is a combination of `x^l A_j d^l D^{r-i}` with `l < i + k` (times `x^{i-r}` below order 0,
/// which keeps it totally free of `B`).
pub fn aq_element(r: &mut impl Rng, q: u32, k: u32, ord: i64, depth: usize) -> GradedOp {
    let f = CycField::new(q).expect("modulus");
    let one = |c: Rat| CycElem::rat(&f, c);
    loop {
        let mut h = Hcpc::zero(&f);
        for l in 0..=k {
            let c = if l == k { small_rat(r, true) } else { small_rat(r, false) };
            h.add_hcp(&Hcp::atom_x(&f, l, 0, ord, one(c)));
        }
        for i in 1..depth as i64 {
            if r.gen_bool(0.3) {
                continue;
            }
            let m = ord - i;
            let u = (-m).max(0);
            let cap = (i + k as i64 - u - 1).max(-1);
            let mut comp = Hcpc::zero(&f);
            for _ in 0..r.gen_range(1..=2) {
                if cap < 0 {
                    break;
                }
                let l = r.gen_range(0..=cap) as u32;
                let j = r.gen_range(0..q);
                comp.add_hcp(&Hcp::atom_x(&f, l, j, m + u, one(small_rat(r, true))));
            }
            if u > 0 {
                comp = comp.mul(&Gen::X.to_hcpc(&f).pow(u as u32).expect("power")).expect("product");
            }
            for c in comp.components().values() {
                h.add_hcp(c);
            }
        }
        let g = GradedOp::from_hcpc(&h, ord, depth);
        if g.ord() == Some(ord) && condition_aq(&g, q, k).is_ok() {
            return g;
        }
    }
}
