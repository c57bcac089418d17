use std::collections::BTreeMap;

use super::GradedOp;
use crate::error::{pre, Error, Result};
use crate::exactnum::{CycElem, Rat, TruncSeries, UniPoly};
use crate::hcp::quasi::{falling, QuasiPoly};
use crate::hcp::{Hcp, Hcpc};
use crate::weyl::D1Op;

/// The automorphism `x -> u`, `d -> (1/u') d + v` of the series operator ring (`u(0) = 0`, `u'(0) != 0`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableChange {
    pub u: TruncSeries<Rat>,
    pub v: TruncSeries<Rat>,
    pub precision: usize,
}

impl VariableChange {
    pub fn identity(precision: usize) -> VariableChange {
        VariableChange {
            u: TruncSeries::monomial(&(), 1, Rat::one(), precision),
            v: TruncSeries::zero(&(), precision),
            precision,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u == TruncSeries::monomial(&(), 1, Rat::one(), self.u.precision()) && self.v.is_zero()
    }

    pub fn apply(&self, op: &D1Op<Rat>) -> Result<D1Op<Rat>> {
        op.change_variables(&self.u, &self.v)
    }

    /// `x -> f`, `d -> (1/f') d - v(f)/f'` where `u(f(x)) = x`.
    pub fn inverse(&self) -> Result<VariableChange> {
        let f = reversion(&self.u)?;
        let df = f.derivative();
        let vf = self.v.truncate(df.precision()).compose(&f.truncate(df.precision()))?;
        let v = vf.mul(&df.inv()?).neg();
        let p = v.precision().min(f.precision());
        Ok(VariableChange { u: f.truncate(p), v: v.truncate(p), precision: p })
    }
}

/// Compositional inverse of `u` with `u(0) = 0`, `u'(0) != 0`.
pub fn reversion(u: &TruncSeries<Rat>) -> Result<TruncSeries<Rat>> {
    let p = u.precision();
    if p < 2 || !u.coeff(0).is_zero() || u.coeff(1).is_zero() {
        return pre("reversion needs u(0) = 0 and u'(0) != 0");
    }
    let a1 = u.coeff(1).inv()?;
    // fixed point f = (x - (u(f) - a f)) / a, one coefficient per round
    let mut f = TruncSeries::monomial(&(), 1, a1.clone(), p);
    let x = TruncSeries::monomial(&(), 1, Rat::one(), p);
    for _ in 0..p {
        let uf = u.compose(&f)?;
        let nf = f.add(&x.sub(&uf).scale(&a1));
        if nf == f {
            break;
        }
        f = nf;
    }
    Ok(f)
}

/// Normalise `P = h d^p + b d^{p-1} + ...` to `d^p + (terms of order <= p - 2)`.
///
/// First `x -> u` with `u' = h(u)^{1/p}` makes the head 1, then `d -> d + w`,
/// `w = -b/p`, clears the next coefficient. The two compose to one [`VariableChange`].
pub fn normalize(op: &D1Op<Rat>, precision: usize) -> Result<(VariableChange, D1Op<Rat>)> {
    let Some(p) = op.order() else {
        return pre("normalize: zero operator");
    };
    if p == 0 {
        return pre("normalize needs order >= 1");
    }
    let prec = precision.min(op.precision());
    if prec < 2 {
        return Err(Error::PrecisionExhausted { needed: 2, available: prec });
    }
    if is_normalized(op) {
        return Ok((VariableChange::identity(prec), op.truncate(prec)));
    }
    let h = op.coeff(p).truncate(prec);
    let h0 = h.eval0();
    if h0.is_zero() {
        return pre("normalize: the highest coefficient vanishes at 0");
    }
    let c = h0.nth_root(p as u32).ok_or_else(|| Error::MissingRoot { value: h0.to_string(), degree: p as u32 })?;
    let hn = h.scale(&h0.inv()?);
    let alpha = Rat::frac(1, p as i64);
    let mut u = TruncSeries::monomial(&(), 1, c.clone(), prec);
    for _ in 0..=prec {
        let root = hn.compose(&u)?.pow_rat(&alpha)?.scale(&c);
        let nu = root.integral().truncate(prec);
        if nu == u {
            break;
        }
        u = nu;
    }
    let zero = TruncSeries::zero(&(), prec);
    let step = op.change_variables(&u, &zero)?;
    let w = step.coeff(p - 1).scale(&Rat::frac(-1, p as i64));
    let pw = w.precision().min(u.precision() - 1);
    let v = w.truncate(pw).mul(&u.derivative().truncate(pw).inv()?);
    let change = VariableChange { u: u.truncate(pw + 1), v, precision: pw };
    let pn = change.apply(op)?;
    let keep = pn.precision();
    if pn.coeff(p) != TruncSeries::one(&(), keep) || !pn.coeff(p - 1).is_zero() {
        return pre("normalize: internal check failed");
    }
    Ok((change, pn))
}

/// Whether the operator is `d^p + (order <= p - 2 terms)` to its precision.
pub fn is_normalized(op: &D1Op<Rat>) -> bool {
    match op.order() {
        Some(p) if p >= 1 => op.coeff(p) == TruncSeries::one(&(), op.precision()) && op.coeff(p - 1).is_zero(),
        _ => false,
    }
}

/// `sum u^i d^i / i!`, the operator `f(x) -> f(x + u)`, over modulus `k`.
///
/// The order `-t` component sends `x^m` to `[x^{m+t}] (x + u)^m x^{m+t}`; with
/// `1 + u'(0) = xi^i` this is `xi^{i m}` times a degree `t` polynomial in `m`,
/// so each component is a finite form. `1 + u'(0) = 0` gives pure `B` components.
pub fn endo_operator(u: &TruncSeries<CycElem>, depth: usize) -> Result<GradedOp> {
    let field = u.field().clone();
    if !u.eval0().is_zero() {
        return pre("endo_operator needs u(0) = 0");
    }
    if depth == 0 {
        return pre("endo_operator needs depth >= 1");
    }
    let one = CycElem::rat(&field, Rat::one());
    let lead = one.add(&u.coeff(1));
    let mut h = Hcpc::zero(&field);
    if lead.is_zero() {
        let need = 2 * depth;
        if u.precision() < need {
            return Err(Error::PrecisionExhausted { needed: need, available: u.precision() });
        }
        // y = x + u has valuation >= 2
        let y = u.add(&TruncSeries::monomial(&field, 1, one.clone(), u.precision())).truncate(need);
        let mut pw = TruncSeries::one(&field, need);
        for m in 0..depth {
            if m > 0 {
                pw = pw.mul(&y);
            }
            for t in m..depth {
                let c = pw.coeff(m + t);
                if c.is_zero() {
                    continue;
                }
                let n = (m + t) as i64;
                let lam = c.scale(&(&Rat::from(Rat::factorial(n as u32)) * &Rat::from(Rat::factorial(m as u32)).inv()?));
                let mut pts = BTreeMap::new();
                pts.insert((n + 1) as u32, lam);
                h.add_hcp(&Hcp::from_symbol(&field, -(t as i64), &QuasiPoly::zero(&field), pts));
            }
        }
        return Ok(GradedOp::from_hcpc(&h, 0, depth));
    }
    let k = field.conductor() as i64;
    let Some(i) = (0..k).find(|&i| CycElem::xi_pow(&field, i) == lead) else {
        return pre(format!("endo_operator needs 1 + u'(0) to be a power of xi_{k} (or 0)"));
    };
    let need = depth + 1;
    if u.precision() < need {
        return Err(Error::PrecisionExhausted { needed: need, available: u.precision() });
    }
    // w = (x + u) / (x xi^i) = 1 + v
    let y = u.add(&TruncSeries::monomial(&field, 1, one.clone(), u.precision()));
    let inv_lead = lead.inv()?;
    let w = TruncSeries::from_coeffs(&field, y.coeffs()[1..].to_vec(), depth).scale(&inv_lead);
    let log_w = w.derivative().mul(&w.truncate(depth - 1).inv()?).integral().truncate(depth);
    // [x^t] w^m = sum_s m^s [x^t] L^s / s!
    let mut lpow = vec![TruncSeries::one(&field, depth)];
    for s in 1..depth {
        let nx = lpow[s - 1].mul(&log_w);
        lpow.push(nx);
    }
    for t in 0..depth {
        let mut coeffs = vec![];
        let mut fact = Rat::one();
        for (s, ls) in lpow.iter().enumerate().take(t + 1) {
            if s > 0 {
                fact *= &Rat::int(s as i64);
            }
            coeffs.push(ls.coeff(t).scale(&fact.inv()?));
        }
        let poly_t = UniPoly::new(&field, coeffs);
        // lambda(n) = xi^{i (n - t)} poly_t(n - t) (n)_t
        let lam = poly_t.shift(-(t as i64)).mul(&falling(&field, t as u32));
        let lam = lam.scale(&CycElem::xi_pow(&field, -i * t as i64));
        let mut q = QuasiPoly::zero(&field);
        q.add_part(i as u32, &lam);
        h.add_hcp(&Hcp::from_symbol(&field, -(t as i64), &q, BTreeMap::new()));
    }
    Ok(GradedOp::from_hcpc(&h, 0, depth))
}
