use std::collections::BTreeMap;
use std::sync::Arc;

use super::quasi::QuasiPoly;
use super::{Hcp, Hcpc};
use crate::error::{pre, Error, Result};
use crate::exactnum::{linalg, CycElem, CycField, Rat, UniPoly};

/// Whether `[d^k, H] = 0`.
pub fn is_central(h: &Hcpc, k: u32) -> Result<bool> {
    let dk = Hcp::shift_op(h.field(), k as i64).to_hcpc();
    Ok(dk.commutator(h)?.is_zero())
}

/// Constraint rows `xi^{j (q-1)}`, `q = 1..=u`, `j = 0..k`, for central elements of order `-u`.
pub fn centralizer_constraints(field: &Arc<CycField>, u: u32) -> Vec<Vec<CycElem>> {
    let k = field.conductor();
    (1..=u as i64).map(|q| (0..k as i64).map(|j| CycElem::xi_pow(field, j * (q - 1))).collect()).collect()
}

/// Basis of the order-`l` part of the centralizer of `d^k` in `Hcpc(k)`, for
/// `l_min <= l <= l_max`, `l_min > -k`. Each vector is scaled to lead with 1.
pub fn centralizer_basis(k: u32, l_min: i64, l_max: i64) -> Result<Vec<Hcp>> {
    if k == 0 {
        return pre("centralizer of d^0");
    }
    if l_min <= -(k as i64) {
        return pre(format!("central elements have order > -{k}"));
    }
    let field = CycField::new(k)?;
    let one = CycElem::rat(&field, Rat::one());
    let mut out = vec![];
    for l in l_min..=l_max {
        if l >= 0 {
            for i in 0..k {
                out.push(Hcp::atom_x(&field, 0, i, l, one.clone()));
            }
        } else {
            let u = (-l) as u32;
            let rows = centralizer_constraints(&field, u);
            for mut v in linalg::nullspace(&rows, k as usize, &field) {
                let lead = v.iter().find(|c| !c.is_zero()).unwrap().inv()?;
                for c in v.iter_mut() {
                    *c = c.mul(&lead);
                }
                let xa = v.into_iter().enumerate().map(|(i, c)| ((0, i as u32), c));
                out.push(Hcp::new(&field, l, xa, [])?);
            }
        }
    }
    Ok(out)
}

/// Solve `Q(n + p) - Q(n) = P(n)` with `Q(0) = 0`, via the basis `prod_{s<m} (n - s p)`.
fn sum_step(p_poly: &UniPoly<CycElem>, p: i64, field: &Arc<CycField>) -> UniPoly<CycElem> {
    let Some(deg) = p_poly.degree() else {
        return UniPoly::zero(field);
    };
    // forward differences with step p at 0
    let mut vals: Vec<CycElem> = (0..=deg as i64).map(|s| p_poly.eval_int(s * p)).collect();
    let mut out = UniPoly::zero(field);
    let mut basis = UniPoly::constant(field, CycElem::rat(field, Rat::one())); // b_0
    let mut fact = Rat::one(); // m! p^m
    for m in 0..=deg {
        if m > 0 {
            fact *= &Rat::int(m as i64 * p);
        }
        let a_m = vals[0].scale(&fact.inv().unwrap());
        // append factor (n - m p) to get b_{m+1}; Delta_p b_{m+1} = (m+1) p b_m
        let next = basis.mul(&UniPoly::linear_root(field, &CycElem::rat(field, Rat::int(m as i64 * p))));
        out = out.add(&next.scale(&a_m.scale(&Rat::frac(1, (m as i64 + 1) * p))));
        basis = next;
        for t in 0..vals.len() - 1 {
            vals[t] = vals[t + 1].sub(&vals[t]);
        }
        vals.pop();
    }
    out
}

/// `Y` of order `-t` with `[Y, d^p] = R`, where `ord R = p - t`, `t >= 1`.
///
/// The solution is unique up to the order `-t` centralizer; the representative
/// returned has `lambda_Y(m) = 0` for `t <= m < p`, which is also the totally
/// `B`-free solution whenever `R` is totally `B`-free. The result is checked by
/// multiplying back.
pub fn bracket_solve(p: u32, r: &Hcp) -> Result<Hcp> {
    if p == 0 {
        return pre("bracket_solve needs p >= 1");
    }
    let t = p as i64 - r.order();
    if t < 1 {
        return pre(format!("bracket_solve needs ord R < p, got {}", r.order()));
    }
    let rr = if r.modulus() == p { r.clone() } else { r.rescale(p)? };
    let field = rr.field().clone();
    let pi = p as i64;
    let phi_r = rr.symbol();
    let rho = |n: i64| rr.lambda(&phi_r, n).neg();

    // quasi-polynomial part without periodic constants
    let mut psi = QuasiPoly::zero(&field);
    for (&i, poly) in &phi_r.parts {
        psi.add_part(i, &sum_step(&poly.scale(&CycElem::rat(&field, Rat::int(-1))), pi, &field));
    }

    let max_point = rr.b().keys().map(|&j| j as i64 - 1).max().unwrap_or(0);
    let big_l = t.max(pi) + max_point + 1 + pi;
    let mut lam: BTreeMap<i64, CycElem> = BTreeMap::new();
    for m in t..big_l + pi {
        let v = if m < pi {
            CycElem::zero(&field)
        } else {
            let n = m - pi;
            let mut v = rho(n);
            if n >= t {
                v = v.add(&lam[&n]);
            }
            v
        };
        lam.insert(m, v);
    }
    // periodic correction fitted on one full period
    let inv_p = Rat::frac(1, pi);
    let mut phi_y = psi.clone();
    for i in 0..pi {
        let mut c = CycElem::zero(&field);
        for m in big_l..big_l + pi {
            let dm = lam[&m].sub(&psi.eval(m));
            c = c.add(&dm.mul(&CycElem::xi_pow(&field, -i * m)));
        }
        let c = c.scale(&inv_p);
        if !c.is_zero() {
            phi_y.add_part(i as u32, &UniPoly::constant(&field, c));
        }
    }
    let mut points = BTreeMap::new();
    for m in t..big_l {
        let g = lam[&m].sub(&phi_y.eval(m));
        if !g.is_zero() {
            points.insert((m + 1) as u32, g);
        }
    }
    let y = Hcp::from_symbol(&field, -t, &phi_y, points);
    let dp = Hcp::shift_op(&field, pi);
    let check = y.mul(&dp)?.add(&dp.mul(&y)?.neg())?;
    if check != rr {
        return Err(Error::BracketObstruction(format!("residual check failed at order {}", rr.order())));
    }
    Ok(y)
}

/// As [`bracket_solve`], rejecting solutions with `Sdeg_A >= bound`.
pub fn bracket_solve_bounded(p: u32, r: &Hcp, bound: u32) -> Result<Hcp> {
    let y = bracket_solve(p, r)?;
    match y.sdeg_a() {
        Some(s) if s >= bound => Err(Error::BracketObstruction(format!(
            "every solution has Sdeg_A = {s} >= {bound} (the centralizer only has Sdeg_A 0)"
        ))),
        _ => Ok(y),
    }
}

/// `(-(1/p) x d + sum_i e_i A_{p;i}) int^p` with `e_0 = (p-1)/(2p)`,
/// `e_i = 1/(p (xi^{-i} - 1))`; satisfies `[tail, d^p] = 1`.
pub fn qp_tail(p: u32) -> Result<Hcp> {
    if p < 2 {
        return pre("qp_tail needs p >= 2");
    }
    let field = CycField::new(p)?;
    let pi = p as i64;
    let mut xa = vec![((1u32, 0u32), CycElem::rat(&field, Rat::frac(-1, pi)))];
    xa.push(((0, 0), CycElem::rat(&field, Rat::frac(pi - 1, 2 * pi))));
    let one = CycElem::rat(&field, Rat::one());
    for i in 1..pi {
        let den = CycElem::xi_pow(&field, -i).sub(&one).scale(&Rat::int(pi));
        xa.push(((0, i as u32), den.inv()?));
    }
    Hcp::new(&field, -pi, xa, [])
}

/// Inverse of an order-0 form with `Sdeg_A <= 0` (a periodic symbol) whose values never vanish.
pub fn invert_order0(h: &Hcp) -> Result<Hcp> {
    if h.order() != 0 {
        return pre("invert_order0 needs order 0");
    }
    if h.sdeg_a().unwrap_or(0) > 0 {
        return Err(Error::NotInvertible("symbol is not periodic (Sdeg_A > 0)".into()));
    }
    let field = h.field().clone();
    let k = field.conductor() as i64;
    let phi = h.symbol();
    let mut inv_vals = vec![];
    for rsd in 0..k {
        let v = phi.eval(rsd);
        inv_vals.push(v.inv().map_err(|_| Error::NotInvertible(format!("symbol vanishes on residue {rsd}")))?);
    }
    let inv_k = Rat::frac(1, k);
    let mut psi = QuasiPoly::zero(&field);
    for i in 0..k {
        let mut c = CycElem::zero(&field);
        for (rsd, v) in inv_vals.iter().enumerate() {
            c = c.add(&v.mul(&CycElem::xi_pow(&field, -i * rsd as i64)));
        }
        let c = c.scale(&inv_k);
        if !c.is_zero() {
            psi.add_part(i as u32, &UniPoly::constant(&field, c));
        }
    }
    let mut points = BTreeMap::new();
    for &j in h.b().keys() {
        let n = j as i64 - 1;
        let lam = h.lambda(&phi, n);
        let inv = lam.inv().map_err(|_| Error::NotInvertible(format!("value vanishes at n = {n}")))?;
        let g = inv.sub(&psi.eval(n));
        if !g.is_zero() {
            points.insert(j, g);
        }
    }
    Ok(Hcp::from_symbol(&field, 0, &psi, points))
}
