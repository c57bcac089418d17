use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{CycElem, CycField, Rat};
use crate::hcp::{Gen, Hcp, Hcpc};

/// One instance of a rewrite identity: identity number `1..=9`, modulus and indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInstance {
    pub id: u8,
    pub k: u32,
    pub a: i64,
    pub b: i64,
}

fn c(f: &Arc<CycField>, r: Rat) -> CycElem {
    CycElem::rat(f, r)
}

fn g(f: &Arc<CycField>, x: Gen) -> Hcpc {
    x.to_hcpc(f)
}

fn b_op(f: &Arc<CycField>, j: i64) -> Hcpc {
    if j <= 0 {
        Hcpc::zero(f)
    } else {
        Hcp::atom_b(f, j as u32, 0, c(f, Rat::one())).to_hcpc()
    }
}

/// `D^n`: `d^n` for `n >= 0`, `int^{-n}` otherwise.
fn dpow(f: &Arc<CycField>, n: i64) -> Hcpc {
    Hcp::shift_op(f, n).to_hcpc()
}

/// `(x d)^j`
fn gamma(f: &Arc<CycField>, j: i64) -> Result<Hcpc> {
    g(f, Gen::X).mul(&g(f, Gen::D))?.pow(j as u32)
}

fn xpow(f: &Arc<CycField>, m: i64) -> Result<Hcpc> {
    g(f, Gen::X).pow(m as u32)
}

fn ipow(base: i64, e: i64) -> Rat {
    // 0^0 = 1
    Rat::int(base).pow(e).expect("nonnegative exponent")
}

/// `sum_l binom(j, l) i^{j-l} Gamma_l`
fn gamma_shift(f: &Arc<CycField>, i: i64, j: i64) -> Result<Hcpc> {
    let mut acc = Hcpc::zero(f);
    for l in 0..=j {
        let coef = &Rat::binomial(j, l as u32) * &ipow(i, j - l);
        acc = acc.add(&gamma(f, l)?.scale(&c(f, coef)))?;
    }
    Ok(acc)
}

/// Perturb a right-hand side; used to check that a broken rule is reported.
fn corrupt(h: Hcpc, on: bool) -> Result<Hcpc> {
    if !on {
        return Ok(h);
    }
    let f = h.field().clone();
    h.add(&Hcpc::one(&f).scale(&c(&f, Rat::frac(1, 7))))
}

/// Both sides equal, exactly. `Err` only for internal failures of the calculus.
pub fn identity_holds(inst: &IdentityInstance, corrupted: bool) -> Result<bool> {
    let f = CycField::new(inst.k)?;
    let f = &f;
    let (a, b) = (inst.a, inst.b);
    let eq = |l: &Hcpc, r: Hcpc| -> Result<bool> { Ok(l == &corrupt(r, corrupted)?) };
    match inst.id {
        1 => {
            // A_i B_j = B_j A_i = xi^{i(j-1)} B_j
            let ai = g(f, Gen::A(a as u32));
            let bj = b_op(f, b);
            let rhs = bj.scale(&CycElem::xi_pow(f, a * (b - 1)));
            Ok(eq(&ai.mul(&bj)?, rhs.clone())? && eq(&bj.mul(&ai)?, rhs)?)
        }
        2 => {
            // int x^m = sum_i (-1)^i m!/(m+i+1)! x^{m+i+1} d^i, compared on x^n, n <= b;
            // and int x^m delta = x^{m+1} delta / (m+1)
            let m = a;
            let lhs = g(f, Gen::Int).mul(&xpow(f, m)?)?;
            let mut rhs = Hcpc::zero(f);
            for i in 0..=b {
                let coef = &Rat::from(Rat::factorial(m as u32)) / &Rat::from(Rat::factorial((m + i + 1) as u32));
                let coef = if i % 2 == 1 { -coef } else { coef };
                let t = xpow(f, m + i + 1)?.mul(&dpow(f, i))?;
                rhs = rhs.add(&t.scale(&c(f, coef)))?;
            }
            let rhs = corrupt(rhs, corrupted)?;
            let acts = (0..=b as u32).all(|n| lhs.act_monomial(n) == rhs.act_monomial(n));
            let delta = g(f, Gen::Delta);
            let l2 = g(f, Gen::Int).mul(&xpow(f, m)?)?.mul(&delta)?;
            let r2 = xpow(f, m + 1)?.mul(&delta)?.scale(&c(f, Rat::frac(1, m + 1)));
            Ok(acts && l2 == r2)
        }
        3 => {
            // int^m d^m = 1 - sum_{k <= m} B_k
            let lhs = dpow(f, -a).mul(&dpow(f, a))?;
            let mut rhs = Hcpc::one(f);
            for j in 1..=a {
                rhs = rhs.sub(&b_op(f, j))?;
            }
            eq(&lhs, rhs)
        }
        4 => {
            // int^u f = f int^u + sum_l binom(-u, l) f^{(l)} int^{u+l}, f = x^b
            let u = a;
            let lhs = dpow(f, -u).mul(&xpow(f, b)?)?;
            let mut rhs = xpow(f, b)?.mul(&dpow(f, -u))?;
            for l in 1..=b {
                let fall = &Rat::from(Rat::factorial(b as u32)) / &Rat::from(Rat::factorial((b - l) as u32));
                let coef = &Rat::binomial(-u, l as u32) * &fall;
                let t = xpow(f, b - l)?.mul(&dpow(f, -(u + l)))?;
                rhs = rhs.add(&t.scale(&c(f, coef)))?;
            }
            eq(&lhs, rhs)
        }
        5 => {
            // B_i B_j = delta_ij B_j
            let lhs = b_op(f, a).mul(&b_op(f, b))?;
            let rhs = if a == b { b_op(f, b) } else { Hcpc::zero(f) };
            eq(&lhs, rhs)
        }
        6 => {
            // A_i Gamma_j = Gamma_j A_i
            let ai = g(f, Gen::A(a as u32));
            let gj = gamma(f, b)?;
            eq(&ai.mul(&gj)?, gj.mul(&ai)?)
        }
        7 => {
            // D^i Gamma_j = sum binom(j,l) i^{j-l} Gamma_l D^i; Gamma_j x^i = x^i sum ... (i >= 0)
            let (i, j) = (a, b);
            let first = eq(&dpow(f, i).mul(&gamma(f, j)?)?, gamma_shift(f, i, j)?.mul(&dpow(f, i))?)?;
            if i < 0 {
                return Ok(first);
            }
            Ok(first && eq(&gamma(f, j)?.mul(&xpow(f, i)?)?, xpow(f, i)?.mul(&gamma_shift(f, i, j)?)?)?)
        }
        8 => {
            // Gamma_i B_j = B_j Gamma_i = (j-1)^i B_j
            let gi = gamma(f, a)?;
            let bj = b_op(f, b);
            let rhs = bj.scale(&c(f, ipow(b - 1, a)));
            Ok(eq(&gi.mul(&bj)?, rhs.clone())? && eq(&bj.mul(&gi)?, rhs)?)
        }
        9 => {
            // D^u B_j = B_{j-u} D^u
            let (u, j) = (a, b);
            eq(&dpow(f, u).mul(&b_op(f, j))?, b_op(f, j - u).mul(&dpow(f, u))?)
        }
        _ => crate::error::pre(format!("no identity {}", inst.id)),
    }
}

/// All instances with `k <= k_max`, indices `<= idx` (and `f = x^a`, `a <= a_max`).
pub fn identity_instances(k_max: u32, idx: i64, a_max: i64) -> Vec<IdentityInstance> {
    let mut out = vec![];
    for k in 1..=k_max {
        let ki = k as i64;
        let mut push = |id: u8, a: i64, b: i64| out.push(IdentityInstance { id, k, a, b });
        for i in 0..ki.min(idx + 1) {
            for j in 1..=idx {
                push(1, i, j);
                push(6, i, j);
            }
        }
        for m in 0..=a_max {
            push(2, m, idx);
        }
        for m in 1..=idx {
            push(3, m, 0);
        }
        for u in 1..=idx {
            for a in 0..=a_max {
                push(4, u, a);
            }
        }
        for i in 1..=idx {
            for j in 1..=idx {
                push(5, i, j);
            }
        }
        for i in -idx..=idx {
            for j in 0..=idx {
                push(7, i, j);
            }
        }
        for i in 0..=idx {
            for j in 1..=idx {
                push(8, i, j);
            }
        }
        for u in -idx..=idx {
            for j in 1..=idx {
                push(9, u, j);
            }
        }
    }
    out
}
