use std::fmt;

use super::{Rat, Scalar};

/// Dense univariate polynomial, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<S: Scalar> {
    field: S::Field,
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text("x"))
    }
}

impl<S: Scalar> UniPoly<S> {
    pub fn zero(field: &S::Field) -> UniPoly<S> {
        UniPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn constant(field: &S::Field, c: S) -> UniPoly<S> {
        UniPoly::new(field, vec![c])
    }

    pub fn new(field: &S::Field, coeffs: Vec<S>) -> UniPoly<S> {
        let mut p = UniPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// `x - a`
    pub fn linear_root(field: &S::Field, a: &S) -> UniPoly<S> {
        UniPoly::new(field, vec![a.negate(), S::one(field)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(|| S::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(|| S::zero(&self.field))
    }

    pub fn add(&self, o: &UniPoly<S>) -> UniPoly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn sub(&self, o: &UniPoly<S>) -> UniPoly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn scale(&self, c: &S) -> UniPoly<S> {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn scale_rat(&self, r: &Rat) -> UniPoly<S> {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a.scale(r)).collect())
    }

    pub fn mul(&self, o: &UniPoly<S>) -> UniPoly<S> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![S::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: u32) -> UniPoly<S> {
        let mut acc = UniPoly::constant(&self.field, S::one(&self.field));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; `None` for a zero divisor.
    pub fn divmod(&self, b: &UniPoly<S>) -> Option<(UniPoly<S>, UniPoly<S>)> {
        let db = b.degree()?;
        let lc = b.lead().try_inv().ok()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![S::zero(&self.field); r.len().saturating_sub(db)];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap().times(&lc);
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].minus(&c.times(bc));
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Some((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &UniPoly<S>) -> UniPoly<S> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.lead().try_inv().expect("nonzero lead");
        a.scale(&inv)
    }

    /// Number of distinct roots over an algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }

    pub fn derivative(&self) -> UniPoly<S> {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a.scale(&Rat::int(i as i64))).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> S {
        self.eval(&S::from_int(&self.field, n))
    }

    /// `p(x + r)` by Horner in the shifted variable.
    pub fn shift(&self, r: i64) -> UniPoly<S> {
        if r == 0 {
            return self.clone();
        }
        let lin = UniPoly::new(&self.field, vec![S::from_int(&self.field, r), S::one(&self.field)]);
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(&self.field, c.clone()));
        }
        acc
    }

    pub fn text(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.signed_text();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}
