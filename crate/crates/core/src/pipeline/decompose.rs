use serde::Serialize;

use crate::exactnum::Rat;
use crate::newton::{proportional_tops, top_part, Weight};
use crate::weyl::{Endo, TameGen, WeylOp};

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Why a pair could not be reduced, with the pair it got stuck on.
#[derive(Clone, Debug, Serialize)]
pub struct DecomposeFailure {
    pub reason: String,
    pub p: String,
    pub q: String,
    /// generators removed before getting stuck
    pub reduced_by: Vec<String>,
}

/// Tame word `w` with `word_to_endo(w)` mapping `x -> P`, `d -> Q`.
///
/// Reduces the total degrees by right composition: `phi o Phi_{n,-c}` replaces `P` by
/// `P - c Q^n` and `phi o Phi'_{n,-c}` replaces `Q` by `Q - c P^n`, with `n` and `c` read
/// from the proportional `(1,1)` tops. At total degree one the constants are removed by
/// `n = 0` generators and the rest is a linear generator.
pub fn decompose_automorphism(p: &WeylOp<Rat>, q: &WeylOp<Rat>, max_steps: usize) -> Result<Vec<TameGen>, DecomposeFailure> {
    let mut removed: Vec<TameGen> = vec![];
    let fail = |reason: String, p: &WeylOp<Rat>, q: &WeylOp<Rat>, removed: &[TameGen]| DecomposeFailure {
        reason,
        p: p.to_string(),
        q: q.to_string(),
        reduced_by: removed.iter().map(|g| g.to_string()).collect(),
    };
    if !Endo::new(p.clone(), q.clone()).is_ok() {
        return Err(fail("not an endomorphism: [Q, P] != 1".into(), p, q, &removed));
    }
    let wt = Weight::ints(1, 1);
    let (mut p, mut q) = (p.clone(), q.clone());
    loop {
        let (v, w) = (p.total_degree().unwrap_or(0), q.total_degree().unwrap_or(0));
        if v <= 1 && w <= 1 {
            break;
        }
        if removed.len() >= max_steps {
            return Err(fail(format!("step cap {max_steps} reached"), &p, &q, &removed));
        }
        let (fp, fq) = (top_part(&p, &wt), top_part(&q, &wt));
        if v >= w {
            // P - c Q^{v/w}
            if w == 0 || v % w != 0 {
                return Err(fail(format!("total degree {w} does not divide {v}"), &p, &q, &removed));
            }
            let k = v / w;
            let Some(c) = proportional_tops(&fq, &fp, 1, k) else {
                return Err(fail("(1,1) tops are not proportional".into(), &p, &q, &removed));
            };
            p = p.sub(&q.pow(k as u32).scale(&c));
            removed.push(TameGen::Phi { n: k as u32, lambda: -&c });
        } else {
            if v == 0 || w % v != 0 {
                return Err(fail(format!("total degree {v} does not divide {w}"), &p, &q, &removed));
            }
            let k = w / v;
            let Some(c) = proportional_tops(&fp, &fq, 1, k) else {
                return Err(fail("(1,1) tops are not proportional".into(), &p, &q, &removed));
            };
            q = q.sub(&p.pow(k as u32).scale(&c));
            removed.push(TameGen::PhiPrime { n: k as u32, lambda: -&c });
        }
    }
    let e = p.coeff(0, 0);
    if !e.is_zero() {
        p = p.sub(&WeylOp::constant(&(), e.clone()));
        removed.push(TameGen::Phi { n: 0, lambda: -&e });
    }
    let e = q.coeff(0, 0);
    if !e.is_zero() {
        q = q.sub(&WeylOp::constant(&(), e.clone()));
        removed.push(TameGen::PhiPrime { n: 0, lambda: -&e });
    }
    let lin = match TameGen::linear(q.coeff(0, 1), q.coeff(1, 0), p.coeff(0, 1), p.coeff(1, 0)) {
        Ok(g) => g,
        Err(e) => return Err(fail(format!("linear remainder: {e}"), &p, &q, &removed)),
    };
    let mut word = vec![];
    if !lin.to_endo().is_identity() {
        word.push(lin);
    }
    word.extend(removed.iter().rev().map(|g| g.inverse()));
    Ok(word)
}
