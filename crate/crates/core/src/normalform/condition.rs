use serde::Serialize;

use super::GradedOp;
use crate::exactnum::{CycElem, Rat};
use crate::hcp::quasi::QuasiPoly;
use crate::hcp::Hcp;
use crate::weyl::D1Op;

/// First clause of condition `A_q(k)` that fails, with the offending component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AqWitness {
    pub clause: u8,
    pub order: Option<i64>,
    pub reason: String,
}

/// Condition `A_q(k)`:
/// 1. components are forms over a modulus dividing `q`;
/// 2. every component is totally free of `B`;
/// 3. `Sdeg_A(P_{ord - i}) < i + k` for `i > 0`;
/// 4. the symbol has no `A_i` (`i != 0`) or `B` atoms and `Sdeg_A(sigma) = k`.
pub fn condition_aq(p: &GradedOp, q: u32, k: u32) -> Result<(), AqWitness> {
    if q == 0 || q % p.modulus() != 0 {
        return Err(AqWitness { clause: 1, order: None, reason: format!("modulus {} does not divide {q}", p.modulus()) });
    }
    let Some(ord) = p.ord() else {
        return Err(AqWitness { clause: 4, order: None, reason: "zero operator has no symbol".into() });
    };
    for (&m, h) in p.components().iter().rev() {
        if !h.is_totally_free_b() {
            return Err(AqWitness { clause: 2, order: Some(m), reason: "not totally free of B".into() });
        }
        if m == ord {
            if h.has_a() || !h.b().is_empty() {
                return Err(AqWitness { clause: 4, order: Some(m), reason: "symbol contains A_i (i != 0) or B atoms".into() });
            }
            if h.sdeg_a() != Some(k) {
                return Err(AqWitness { clause: 4, order: Some(m), reason: format!("Sdeg_A(symbol) = {:?}, want {k}", h.sdeg_a()) });
            }
        } else {
            let i = (ord - m) as u32;
            if let Some(s) = h.sdeg_a() {
                if s >= i + k {
                    return Err(AqWitness { clause: 3, order: Some(m), reason: format!("Sdeg_A = {s} >= {}", i + k) });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    Irregular,
    Undetermined,
}

/// Right action of a form `H` of order `r` on `F = K[d]` is `d^j -> lambda_H(j) d^{j+r}`;
/// so `H` is regular iff `r >= 0` and `lambda_H(j) != 0` for all `j >= 0`.
pub fn symbol_regularity(h: &Hcp) -> Regularity {
    if h.is_zero() || h.order() < 0 {
        return Regularity::Irregular;
    }
    let phi = h.symbol();
    let k = h.modulus() as i64;
    let mut pts: Vec<i64> = h.b().keys().map(|&j| j as i64 - 1).collect();
    pts.extend(0..k);
    if pts.iter().any(|&n| h.lambda(&phi, n).is_zero()) {
        return Regularity::Irregular;
    }
    if h.sdeg_a().unwrap_or(0) == 0 {
        // periodic off the points: one period decides
        return Regularity::Regular;
    }
    if h.has_a() {
        return Regularity::Undetermined;
    }
    match nonneg_integer_root(&phi, h.b().keys().map(|&j| j as i64 - 1).collect()) {
        Some(true) => Regularity::Irregular,
        Some(false) => Regularity::Regular,
        None => Regularity::Undetermined,
    }
}

/// For an `A`-free symbol `phi = P_0` with rational coefficients: whether `P_0(n) = 0`
/// for some integer `n >= 0` outside `skip`. `None` if the coefficients leave `Q` or
/// the root bound is too large to search.
fn nonneg_integer_root(phi: &QuasiPoly, skip: Vec<i64>) -> Option<bool> {
    let p = phi.parts.get(&0)?;
    let coeffs: Vec<Rat> = p.coeffs().iter().map(|c| c.as_rat()).collect::<Option<_>>()?;
    let lead = coeffs.last()?.abs();
    let mut bound = Rat::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        let q = &c.abs() / &lead;
        if q > bound {
            bound = q;
        }
    }
    let bound = Rat::from((&bound + &Rat::one()).floor()).to_i64()?;
    if bound > 100_000 {
        return None;
    }
    let f = phi.field.clone();
    for n in 0..=bound {
        if skip.contains(&n) {
            continue;
        }
        let v = p.eval(&CycElem::rat(&f, Rat::int(n)));
        if v.is_zero() {
            return Some(true);
        }
    }
    Some(false)
}

pub fn is_regular(p: &GradedOp) -> Regularity {
    match p.symbol() {
        Some(h) => symbol_regularity(h),
        None => Regularity::Undetermined,
    }
}

/// A series operator with `HT(P)(0) != 0` is regular; otherwise its symbol decides.
pub fn is_regular_d1(p: &D1Op<Rat>) -> Regularity {
    let Some(h) = p.head() else {
        return Regularity::Irregular;
    };
    if !h.eval0().is_zero() {
        return Regularity::Regular;
    }
    match GradedOp::from_d1(p, 1, 1) {
        Ok(g) => is_regular(&g),
        Err(_) => Regularity::Undetermined,
    }
}
