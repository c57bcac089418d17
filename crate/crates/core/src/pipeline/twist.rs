use serde::Serialize;

use crate::error::{pre, Result};
use crate::exactnum::{Rat, UniPoly};
use crate::newton::{hm, subrect_data, BivarPoly, Weight};
use crate::weyl::{Endo, TameGen, WeylOp};

#[derive(Clone, Debug)]
pub struct TwistedTop {
    /// `Phi_{N,lambda}(F)`
    pub image: WeylOp<Rat>,
    /// its `(N,1)`-top line
    pub top_line: BivarPoly<Rat>,
    /// its `(eps,1)` top part
    pub eps_part: BivarPoly<Rat>,
    pub monomial: bool,
}

fn check(n: u32, eps: &Rat) -> Result<()> {
    if &Rat::int(n as i64) <= eps {
        return pre(format!("twisted_top needs N > eps, got N = {n}, eps = {eps}"));
    }
    Ok(())
}

/// Image of `F` under `x -> x + lambda d^N`, with its `(N,1)` and `(eps,1)` tops.
pub fn twisted_top(f: &WeylOp<Rat>, n: u32, lambda: &Rat, eps: &Rat) -> Result<TwistedTop> {
    check(n, eps)?;
    if lambda.is_zero() {
        return pre("twisted_top needs lambda != 0");
    }
    if f.is_zero() {
        return pre("twisted_top of zero");
    }
    let image = TameGen::Phi { n, lambda: lambda.clone() }.to_endo().apply(f);
    let b = BivarPoly::from_weyl(&image);
    let top_line = b.top_part(&Weight::ints(n as i64, 1));
    let eps_part = b.top_part(&Weight::new(eps.clone(), Rat::one())?);
    let monomial = eps_part.is_monomial();
    Ok(TwistedTop { image, top_line, eps_part, monomial })
}

/// `lambda` kept as an indeterminate: the coefficient of `y^V` on the `(N,1)`-top line of
/// `Phi_{N,lambda}(F)` is `sum_{Na + b = V} c_{ab} lambda^a`. It is a nonzero polynomial
/// exactly when the image has its vertical monomial for all but finitely many `lambda`.
pub fn twisted_axis_coeff(f: &WeylOp<Rat>, n: u32, eps: &Rat) -> Result<(u32, UniPoly<Rat>)> {
    check(n, eps)?;
    let Some(v) = f.terms().keys().map(|&(a, b)| n * a + b).max() else {
        return pre("twisted_top of zero");
    };
    let mut c = vec![Rat::zero(); 1 + f.terms().keys().map(|k| k.0 as usize).max().unwrap_or(0)];
    for (&(a, b), coef) in f.terms() {
        if n * a + b == v {
            c[a as usize] = &c[a as usize] + coef;
        }
    }
    Ok((v, UniPoly::new(&(), c)))
}

/// Order data of `P^ = phi(Phi_{N,lambda}(P))`, `Q^ = phi(Phi_{N,lambda}(Q))` for `phi: x -> P, d -> Q`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub ord_p_hat: Option<i64>,
    pub ord_q_hat: Option<i64>,
    /// `dm(nd + Nln)` and `dm(md + Nlm)`
    pub predicted_p: i64,
    pub predicted_q: i64,
    pub subrectangular: bool,
    pub ess_gcd: u32,
    pub ess_gcd_hat: Option<u32>,
    pub vertical_monomial: bool,
}

impl TwistReport {
    pub fn holds(&self) -> bool {
        self.ord_p_hat == Some(self.predicted_p)
            && self.ord_q_hat == Some(self.predicted_q)
            && self.subrectangular
            && self.ess_gcd_hat == Some(self.ess_gcd)
            && self.vertical_monomial
    }
}

/// The pair need not satisfy `[Q, P] = 1`: `phi` acts by normal-ordered substitution.
pub fn twist_pair(p: &WeylOp<Rat>, q: &WeylOp<Rat>, n: u32, lambda: &Rat) -> Result<TwistReport> {
    let sd = subrect_data(p, q)?;
    let eps = sd.rate.clone().ok_or_else(|| crate::Error::Precondition("highest monomials are not proportional".into()))?;
    let phi = Endo::unverified(p.clone(), q.clone());
    let tp = twisted_top(p, n, lambda, &eps)?;
    let tq = twisted_top(q, n, lambda, &eps)?;
    let ph = phi.apply(&tp.image);
    let qh = phi.apply(&tq.image);
    let (d, nn, m, l, big_n) = (sd.d as i64, sd.n as i64, sd.m as i64, sd.l as i64, n as i64);
    let subrect = hm(&ph).is_some() && hm(&qh).is_some();
    let ess_hat = if subrect { subrect_data(&ph, &qh).ok().map(|s| s.ess_gcd) } else { None };
    Ok(TwistReport {
        ord_p_hat: ph.ord(),
        ord_q_hat: qh.ord(),
        predicted_p: d * m * (nn * d + big_n * l * nn),
        predicted_q: d * m * (m * d + big_n * l * m),
        subrectangular: subrect,
        ess_gcd: sd.ess_gcd,
        ess_gcd_hat: ess_hat,
        vertical_monomial: tp.monomial && tq.monomial,
    })
}
