use num_integer::Integer;
use serde::Serialize;

use crate::error::{pre, Result};
use crate::exactnum::{Rat, UniPoly};
use crate::newton::{proportional_tops, top_part, BivarPoly, Weight};
use crate::weyl::WeylOp;

/// Shape data `p = dn`, `q = dm` of a subrectangular pair with `HT(P) = g^n`, `g = (1 + alpha x)^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairShape {
    pub p: i64,
    pub q: i64,
    pub d: i64,
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub d2: i64,
    pub alpha: Rat,
    pub eps: Rat,
}

impl PairShape {
    pub fn new(d: i64, n: i64, m: i64, l: i64, alpha: Rat) -> Result<PairShape> {
        if d < 1 || n < 1 || m < 1 || l < 0 {
            return pre("pair shape needs d, n, m >= 1 and l >= 0");
        }
        if n.gcd(&m) != 1 {
            return pre("pair shape needs gcd(n, m) = 1");
        }
        if l >= d {
            return pre("pair shape needs l < d");
        }
        Ok(PairShape { p: d * n, q: d * m, d, n, m, l, d2: d / l.gcd(&d), alpha, eps: Rat::frac(n, m) })
    }

    /// `(1 + alpha x)^l`
    pub fn g(&self) -> UniPoly<Rat> {
        UniPoly::new(&(), vec![Rat::one(), self.alpha.clone()]).pow(self.l as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionStep {
    /// `F_i` in `X, Y` (`X` for `P`, `Y` for `Q`)
    #[serde(serialize_with = "ser_bivar")]
    pub f: BivarPoly<Rat>,
    #[serde(serialize_with = "ser_weyl")]
    pub q: WeylOp<Rat>,
    pub ord: Option<i64>,
    pub n: Option<i64>,
    pub m: Option<i64>,
    /// `eps_i^{n_i}`, the constant with `f_{0,1}(Q_i)^{n_i} = c f_{0,1}(P)^{m_i}`
    pub c: Option<Rat>,
    /// the rational `n_i`-th root of `c`
    pub eps: Option<Rat>,
    pub big_m: Option<i64>,
    pub divisible_by_d2: Option<bool>,
}

fn ser_bivar<S: serde::Serializer>(b: &BivarPoly<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

fn ser_weyl<S: serde::Serializer>(w: &WeylOp<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StopReason {
    Zero,
    OrderBelowOne,
    NotProportional,
    MissingRoot,
    StepCap,
    SizeCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionTrace {
    pub p_ord: i64,
    pub steps: Vec<RecursionStep>,
    pub stop: StopReason,
}

impl RecursionTrace {
    /// Every fired step has `ord Q_{k+1} < n_k ord Q_k` (the subtracted tops cancel).
    pub fn steps_cancel(&self) -> bool {
        self.steps.windows(2).all(|w| match (w[1].ord, w[0].ord, w[0].n) {
            (Some(o1), Some(o0), Some(n)) => o1 < n * o0,
            (None, _, _) => true,
            _ => false,
        })
    }
}

/// Terms allowed in a `Q_k` before the recursion gives up.
pub const RECURSION_SIZE_CAP: usize = 20_000;

/// `Q_{k+1} = Q_k^{n_k} - c_k P^{m_k}` with `n_k = p / gcd(p, ord Q_k)`, `m_k = ord Q_k / gcd(p, ord Q_k)`,
/// driven by proportionality of `f_{0,1}` tops.
pub fn fi_recursion(p: &WeylOp<Rat>, q: &WeylOp<Rat>, max_steps: usize, shape: Option<&PairShape>) -> Result<RecursionTrace> {
    let Some(pord) = p.ord().filter(|&o| o >= 1) else {
        return pre("fi_recursion needs ord P >= 1");
    };
    let wt = Weight::ints(0, 1);
    let fp = top_part(p, &wt);
    let f = &();
    let mut steps = vec![];
    let mut fk = BivarPoly::monomial(f, 0, 1, Rat::one());
    let mut qk = q.clone();
    let mut big_m = q.ord().map(|o| o + pord);
    let stop = loop {
        let ord = qk.ord();
        let mut step = RecursionStep {
            f: fk.clone(),
            q: qk.clone(),
            ord,
            n: None,
            m: None,
            c: None,
            eps: None,
            big_m,
            divisible_by_d2: match (shape, ord) {
                (Some(s), Some(o)) if !steps.is_empty() => Some(o % s.d2 == 0),
                _ => None,
            },
        };
        let Some(o) = ord else {
            steps.push(step);
            break StopReason::Zero;
        };
        if o < 1 {
            steps.push(step);
            break StopReason::OrderBelowOne;
        }
        let g = pord.gcd(&o);
        let (n, m) = (pord / g, o / g);
        step.n = Some(n);
        step.m = Some(m);
        let Some(c) = proportional_tops(&fp, &top_part(&qk, &wt), n, m) else {
            steps.push(step);
            break StopReason::NotProportional;
        };
        step.eps = c.nth_root(n as u32);
        step.c = Some(c.clone());
        let missing = step.eps.is_none();
        steps.push(step);
        if missing {
            break StopReason::MissingRoot;
        }
        if steps.len() > max_steps {
            break StopReason::StepCap;
        }
        let next = qk.pow(n as u32).sub(&p.pow(m as u32).scale(&c));
        if next.len() > RECURSION_SIZE_CAP {
            break StopReason::SizeCap;
        }
        fk = fk.pow(n as u32).sub(&BivarPoly::monomial(f, m as u32, 0, c));
        big_m = match (next.ord(), big_m) {
            (Some(o1), Some(mk)) => Some(o1 - (o * n - mk)),
            _ => None,
        };
        qk = next;
    };
    Ok(RecursionTrace { p_ord: pord, steps, stop })
}

/// `F(P, Q)` with `X^i Y^j -> P^i Q^j`.
pub fn eval_bivar(fpoly: &BivarPoly<Rat>, p: &WeylOp<Rat>, q: &WeylOp<Rat>) -> WeylOp<Rat> {
    crate::weyl::Endo::unverified(p.clone(), q.clone()).apply(&fpoly.to_weyl())
}
