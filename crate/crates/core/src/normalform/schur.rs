use serde::Serialize;

use super::{is_normalized, GradedOp};
use crate::error::{pre, Error, Result};
use crate::hcp::{bracket_solve, is_central, qp_tail, Hcp};
use crate::weyl::D1Op;

/// `S` with `S P S^{-1} = d^p`, `S_0 = 1`, `S_{-1} = 0`, and its inverse.
#[derive(Clone, Debug)]
pub struct SchurData {
    pub p: u32,
    pub s: GradedOp,
    pub s_inv: GradedOp,
    /// `P` itself as a graded element over modulus `p`.
    pub pnorm: GradedOp,
}

/// Solve `[d^p, S_{-t}] = sum_{s < t} S_{-s} P_{p-t+s}` for `t = 1..depth-1`.
///
/// Each `S_{-t}` is the canonical solution (no centralizer component); the
/// identity `S P = d^p S` is re-checked on the whole window before returning.
pub fn schur(pnorm: &D1Op<crate::exactnum::Rat>, depth: usize) -> Result<SchurData> {
    if depth < 2 {
        return pre("schur needs depth >= 2");
    }
    if !is_normalized(pnorm) {
        return pre("schur needs a normalised operator d^p + (order <= p - 2)");
    }
    let p = pnorm.order().unwrap() as u32;
    let pg = GradedOp::from_d1(pnorm, p, depth)?;
    let field = pg.field().clone();
    let pi = p as i64;
    let mut comps: Vec<Hcp> = vec![Hcp::shift_op(&field, 0)];
    for t in 1..depth as i64 {
        let mut r = Hcp::zero(&field, pi - t);
        for s in 0..t {
            let pc = pg.component(pi - t + s)?;
            if pc.is_zero() || comps[s as usize].is_zero() {
                continue;
            }
            r = r.add(&comps[s as usize].mul(&pc)?)?;
        }
        let y = if r.is_zero() {
            Hcp::zero(&field, -t)
        } else {
            bracket_solve(p, &r.neg()).map_err(|e| Error::BracketObstruction(format!("schur step t = {t}: {e}")))?
        };
        comps.push(y);
    }
    let mut h = crate::hcp::Hcpc::zero(&field);
    for c in &comps {
        h.add_hcp(c);
    }
    let s = GradedOp::from_hcpc(&h, 0, depth);
    let dp = GradedOp::from_hcpc(&Hcp::shift_op(&field, pi).to_hcpc(), pi, depth);
    let resid = s.mul(&pg)?.sub(&dp.mul(&s)?)?;
    if !resid.is_zero() {
        return Err(Error::BracketObstruction(format!("S P - d^p S has a nonzero component of order {:?}", resid.ord())));
    }
    let s_inv = s.invert_unit()?;
    Ok(SchurData { p, s, s_inv, pnorm: pg })
}

/// `S Q S^{-1}` with `Q` already in the normalised coordinates.
pub fn normal_form(q: &D1Op<crate::exactnum::Rat>, sd: &SchurData) -> Result<GradedOp> {
    let depth = sd.s.depth();
    let qg = GradedOp::from_d1(q, sd.p, depth)?;
    sd.s.mul(&qg)?.mul(&sd.s_inv)
}

/// Structure of a normal form of `Q` with `[Q, P] = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    /// Orders `j` in `-p < j <= ord` whose component fails to commute with `d^p`.
    pub non_central: Vec<i64>,
    /// `Q~_{-p} - tail(p)` commutes with `d^p`.
    pub tail_ok: bool,
    /// `Q~_{-p} - tail(p)` vanishes (central forms of order `-p` are zero).
    pub tail_exact: bool,
}

pub fn tail_report(qt: &GradedOp, p: u32) -> Result<TailReport> {
    let pi = p as i64;
    let q_p = qt.component(-pi)?;
    let mut non_central = vec![];
    for (&j, h) in qt.components().range(-pi + 1..) {
        if !is_central(&h.to_hcpc(), p)? {
            non_central.push(j);
        }
    }
    let tail = qp_tail(p)?;
    let diff = q_p.add(&tail.neg())?;
    Ok(TailReport {
        non_central,
        tail_ok: is_central(&diff.to_hcpc(), p)?,
        tail_exact: diff.is_zero(),
    })
}
