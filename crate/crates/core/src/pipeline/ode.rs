use serde::Serialize;

use crate::error::{pre, Result};
use crate::exactnum::{linalg, Rat, Scalar, UniPoly};

/// Solution set `particular + t * kernel` of `c g^A = H' g - kappa H g'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeSolution<S: Scalar> {
    pub particular: UniPoly<S>,
    /// `g^kappa` when it is a polynomial and the constant `t` is free.
    pub kernel: Option<UniPoly<S>>,
}

/// Summary that does not depend on the scalar type.
#[derive(Clone, Debug, Serialize)]
pub struct OdeReport {
    pub solvable: bool,
    pub degree: Option<usize>,
    pub free_parameter: bool,
    pub distinct_roots: usize,
    pub particular: Option<String>,
}

fn kappa(d: i64, z: i64) -> Rat {
    Rat::frac(z + 1, d)
}

fn check(g: &UniPoly<impl Scalar>, a: u32, d: i64, z: i64) -> Result<()> {
    if g.is_zero() {
        return pre("poly_ode_solve needs g != 0");
    }
    if d == 0 {
        return pre("poly_ode_solve needs d != 0");
    }
    if z != (a as i64 - 1) * d {
        return pre(format!("poly_ode_solve needs z = (A - 1) d, got z = {z}, A = {a}, d = {d}"));
    }
    Ok(())
}

/// `H' g - kappa H g'`
pub fn ode_lhs<S: Scalar>(h: &UniPoly<S>, g: &UniPoly<S>, kappa: &Rat) -> UniPoly<S> {
    h.derivative().mul(g).sub(&h.mul(&g.derivative()).scale_rat(kappa))
}

/// Degree bound for `H` and the index `kappa * deg g` when it is a nonnegative integer.
fn bounds(l: usize, a: u32, kap: &Rat) -> (usize, Option<usize>) {
    let kl = kap * &Rat::int(l as i64);
    let free = if kl.is_integer() { kl.to_i64().filter(|&j| j >= 0).map(|j| j as usize) } else { None };
    let base = (a as i64 - 1) * l as i64 + 1;
    let hmax = base.max(0) as usize;
    (free.map_or(hmax, |f| f.max(hmax)), free)
}

/// Exact solution by top-down elimination on the coefficients of `H`.
///
/// `L(x^j)` has leading term `(j - kappa l) lc(g) x^{j + l - 1}`, so every coefficient
/// is forced except at `j = kappa l`. A second elimination started from `x^{kappa l}`
/// decides whether that coefficient is free or pinned by the low-degree residue.
pub fn poly_ode_solve<S: Scalar>(g: &UniPoly<S>, a: u32, d: i64, z: i64, c: &S) -> Result<Option<OdeSolution<S>>> {
    check(g, a, d, z)?;
    let f = g.field().clone();
    let kap = kappa(d, z);
    let l = g.degree().unwrap();
    let lc = g.lead();
    let (hmax, free) = bounds(l, a, &kap);
    let basis: Vec<UniPoly<S>> = (0..=hmax).map(|j| ode_lhs(&monomial(&f, j), g, &kap)).collect();
    let eliminate = |start_res: UniPoly<S>, mut h: Vec<S>| -> Result<(Vec<S>, UniPoly<S>)> {
        let mut res = start_res;
        for j in (0..=hmax).rev() {
            if Some(j) == free {
                continue;
            }
            let Some(deg) = (j + l).checked_sub(1) else {
                continue;
            };
            let r = res.coeff(deg);
            if r.is_zero() {
                continue;
            }
            let lead = lc.scale(&(&Rat::int(j as i64) - &(&kap * &Rat::int(l as i64))));
            let hj = r.times(&lead.try_inv()?);
            res = res.sub(&basis[j].scale(&hj));
            h[j] = h[j].plus(&hj);
        }
        Ok((h, res))
    };
    let rhs = g.pow(a).scale(c);
    let zero_h = vec![S::zero(&f); hmax + 1];
    let (ha, ra) = eliminate(rhs, zero_h.clone())?;
    let hp = UniPoly::new(&f, ha);
    let Some(j0) = free else {
        return Ok(ra.is_zero().then_some(OdeSolution { particular: hp, kernel: None }));
    };
    let mut hb0 = zero_h;
    hb0[j0] = S::one(&f);
    let (hb, rb) = eliminate(UniPoly::zero(&f).sub(&basis[j0]), hb0)?;
    let hk = UniPoly::new(&f, hb);
    if rb.is_zero() {
        return Ok(ra.is_zero().then_some(OdeSolution { particular: hp, kernel: Some(hk) }));
    }
    // ra + t rb = 0
    let i = rb.coeffs().iter().position(|x| !x.is_zero()).unwrap();
    let t = ra.coeff(i).times(&rb.coeff(i).try_inv()?).negate();
    if !ra.add(&rb.scale(&t)).is_zero() {
        return Ok(None);
    }
    Ok(Some(OdeSolution { particular: hp.add(&hk.scale(&t)), kernel: None }))
}

/// The same equation as a dense linear system over the coefficients of `H`.
pub fn poly_ode_solve_dense<S: Scalar>(g: &UniPoly<S>, a: u32, d: i64, z: i64, c: &S) -> Result<Option<OdeSolution<S>>> {
    check(g, a, d, z)?;
    let f = g.field().clone();
    let kap = kappa(d, z);
    let l = g.degree().unwrap();
    let (hmax, _) = bounds(l, a, &kap);
    let rhs = g.pow(a).scale(c);
    let cols: Vec<UniPoly<S>> = (0..=hmax).map(|j| ode_lhs(&monomial(&f, j), g, &kap)).collect();
    let rows = cols.iter().filter_map(|p| p.degree()).max().unwrap_or(0).max(rhs.degree().unwrap_or(0)) + 1;
    let m: Vec<Vec<S>> = (0..rows).map(|r| cols.iter().map(|p| p.coeff(r)).collect()).collect();
    let b: Vec<S> = (0..rows).map(|r| rhs.coeff(r)).collect();
    let Some(x) = linalg::solve(&m, &b, hmax + 1, &f) else {
        return Ok(None);
    };
    let ns = linalg::nullspace(&m, hmax + 1, &f);
    if ns.len() > 1 {
        return pre("dense system has a kernel of dimension > 1");
    }
    Ok(Some(OdeSolution { particular: UniPoly::new(&f, x), kernel: ns.into_iter().next().map(|v| UniPoly::new(&f, v)) }))
}

fn monomial<S: Scalar>(f: &S::Field, j: usize) -> UniPoly<S> {
    let mut c = vec![S::zero(f); j + 1];
    c[j] = S::one(f);
    UniPoly::new(f, c)
}

impl<S: Scalar> OdeSolution<S> {
    /// Same affine solution set as `o`.
    pub fn same_set(&self, o: &OdeSolution<S>) -> bool {
        match (&self.kernel, &o.kernel) {
            (None, None) => self.particular == o.particular,
            (Some(k1), Some(k2)) => {
                let diff = self.particular.sub(&o.particular);
                on_line(k1, k2, true) && on_line(&diff, k1, false)
            }
            _ => false,
        }
    }
}

/// `a = t b` for some `t` (nonzero `t` required when `strict`).
fn on_line<S: Scalar>(a: &UniPoly<S>, b: &UniPoly<S>, strict: bool) -> bool {
    if a.is_zero() {
        return !strict;
    }
    let Some(i) = b.coeffs().iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let Ok(inv) = b.coeff(i).try_inv() else {
        return false;
    };
    let t = a.coeff(i).times(&inv);
    a == &b.scale(&t)
}

pub fn ode_report<S: Scalar>(g: &UniPoly<S>, sol: &Option<OdeSolution<S>>) -> OdeReport {
    OdeReport {
        solvable: sol.is_some(),
        degree: sol.as_ref().and_then(|s| s.particular.degree()),
        free_parameter: sol.as_ref().is_some_and(|s| s.kernel.is_some()),
        distinct_roots: g.distinct_roots(),
        particular: sol.as_ref().map(|s| s.particular.text("x")),
    }
}
