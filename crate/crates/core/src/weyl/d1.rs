use std::fmt;

use super::WeylOp;
use crate::error::{pre, Result};
use crate::exactnum::{Rat, Scalar, TruncSeries};

/// `sum_{j <= ord} a_j(x) d^j` with power-series coefficients known modulo `x^precision`.
#[derive(Clone, PartialEq, Eq)]
pub struct D1Op<S: Scalar> {
    field: S::Field,
    precision: usize,
    /// `coeffs[j]` multiplies `d^j`; the last entry is not identically zero.
    coeffs: Vec<TruncSeries<S>>,
}

impl<S: Scalar> fmt::Debug for D1Op<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for D1Op<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("[{c}]*d^{j}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0 (mod x^{})", self.precision)
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn binom(n: usize, k: usize) -> Rat {
    Rat::binomial(n as i64, k as u32)
}

impl<S: Scalar> D1Op<S> {
    pub fn new(field: &S::Field, precision: usize, coeffs: Vec<TruncSeries<S>>) -> D1Op<S> {
        let mut op = D1Op {
            field: field.clone(),
            precision,
            coeffs: coeffs.into_iter().map(|c| TruncSeries::from_coeffs(field, c.coeffs().to_vec(), precision)).collect(),
        };
        op.trim();
        op
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: &S::Field, precision: usize) -> D1Op<S> {
        D1Op { field: field.clone(), precision, coeffs: vec![] }
    }

    /// Multiplication operator by a series.
    pub fn function(f: &TruncSeries<S>) -> D1Op<S> {
        D1Op::new(f.field(), f.precision(), vec![f.clone()])
    }

    pub fn d(field: &S::Field, precision: usize) -> D1Op<S> {
        D1Op::new(field, precision, vec![TruncSeries::zero(field, precision), TruncSeries::one(field, precision)])
    }

    pub fn from_weyl(p: &WeylOp<S>, precision: usize) -> D1Op<S> {
        let f = p.field();
        let ord = p.ord().unwrap_or(-1);
        let coeffs = (0..=ord).map(|j| TruncSeries::from_coeffs(f, p.d_coeff(j as u32), precision)).collect();
        D1Op::new(f, precision, coeffs)
    }

    /// Back to `A_1` when every coefficient is a polynomial of degree below the precision.
    pub fn to_weyl(&self) -> WeylOp<S> {
        let mut out = WeylOp::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, a);
            }
        }
        out
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeffs(&self) -> &[TruncSeries<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> TruncSeries<S> {
        self.coeffs.get(j).cloned().unwrap_or_else(|| TruncSeries::zero(&self.field, self.precision))
    }

    /// `d`-order; `None` if zero to precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Highest coefficient.
    pub fn head(&self) -> Option<&TruncSeries<S>> {
        self.coeffs.last()
    }

    /// Highest coefficient is a nonzero constant (to precision).
    pub fn is_elliptic(&self) -> bool {
        self.head().is_some_and(|h| h.degree() == Some(0))
    }

    pub fn is_monic(&self) -> bool {
        self.head().is_some_and(|h| h.degree() == Some(0) && h.coeff(0).is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, precision: usize) -> D1Op<S> {
        let p = precision.min(self.precision);
        D1Op::new(&self.field, p, self.coeffs.iter().map(|c| c.truncate(p)).collect())
    }

    pub fn add(&self, o: &D1Op<S>) -> D1Op<S> {
        let p = self.precision.min(o.precision);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|j| self.coeff(j).truncate(p).add(&o.coeff(j).truncate(p))).collect();
        D1Op::new(&self.field, p, coeffs)
    }

    pub fn sub(&self, o: &D1Op<S>) -> D1Op<S> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> D1Op<S> {
        D1Op::new(&self.field, self.precision, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &S) -> D1Op<S> {
        D1Op::new(&self.field, self.precision, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Product; derivatives of the right factor cost up to `ord(self)` digits of precision.
    pub fn mul(&self, o: &D1Op<S>) -> D1Op<S> {
        let ord_a = self.order().unwrap_or(0);
        let p = self.precision.min(o.precision.saturating_sub(ord_a));
        let n = self.coeffs.len() + o.coeffs.len();
        let mut out: Vec<TruncSeries<S>> = vec![TruncSeries::zero(&self.field, p); n.max(1)];
        // derivatives b^(k) of each right coefficient
        let mut ders: Vec<Vec<TruncSeries<S>>> = Vec::with_capacity(o.coeffs.len());
        for b in &o.coeffs {
            let mut v = vec![b.clone()];
            for _ in 0..ord_a {
                let nx = v.last().unwrap().derivative();
                v.push(nx);
            }
            ders.push(v.into_iter().map(|s| s.truncate(p)).map(|s| pad(s, p)).collect());
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a.truncate(p);
            for (j, bd) in ders.iter().enumerate() {
                for k in 0..=i {
                    let dk = &bd[k];
                    if dk.is_zero() {
                        continue;
                    }
                    let t = a.mul(dk).scale(&S::from_rat(&self.field, &binom(i, k)));
                    out[i + j - k] = out[i + j - k].add(&t);
                }
            }
        }
        D1Op::new(&self.field, p, out)
    }

    pub fn pow(&self, e: u32) -> D1Op<S> {
        let mut acc = D1Op::function(&TruncSeries::one(&self.field, self.precision));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Apply to a series: `sum a_j f^(j)`.
    pub fn apply(&self, f: &TruncSeries<S>) -> TruncSeries<S> {
        let ord = self.order().unwrap_or(0);
        let p = self.precision.min(f.precision().saturating_sub(ord));
        let mut acc = TruncSeries::zero(&self.field, p);
        let mut der = f.clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                der = der.derivative();
            }
            acc = acc.add(&a.truncate(p).mul(&pad(der.truncate(p), p)));
        }
        acc
    }

    pub fn commutator(&self, o: &D1Op<S>) -> D1Op<S> {
        self.mul(o).sub(&o.mul(self))
    }

    /// Image under `x -> u`, `d -> (1/u') d + v`; requires `u(0) = 0` and `u'(0) != 0`.
    pub fn change_variables(&self, u: &TruncSeries<S>, v: &TruncSeries<S>) -> Result<D1Op<S>> {
        if !u.eval0().is_zero() {
            return pre("change of variables needs u(0) = 0");
        }
        let du = u.derivative();
        if du.eval0().is_zero() {
            return pre("change of variables needs u'(0) != 0");
        }
        let p = self.precision.min(du.precision()).min(v.precision());
        let inv_du = pad(du, p).inv()?;
        let dd = D1Op::new(&self.field, p, vec![v.truncate(p), inv_du]);
        let mut acc = D1Op::zero(&self.field, p);
        let mut power = D1Op::function(&TruncSeries::one(&self.field, p));
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = dd.mul(&power);
            }
            let au = a.truncate(p).compose(&u.truncate(p))?;
            acc = acc.add(&D1Op::function(&au).mul(&power));
        }
        Ok(acc)
    }
}

/// Derivatives shorten a series by one; pad back with zeros only when the target is shorter already.
fn pad<S: Scalar>(s: TruncSeries<S>, p: usize) -> TruncSeries<S> {
    if s.precision() >= p {
        s.truncate(p)
    } else {
        // the missing coefficients are unknown: callers have already lowered p
        let f = s.field().clone();
        TruncSeries::from_coeffs(&f, s.coeffs().to_vec(), p)
    }
}
