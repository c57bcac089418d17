use std::fmt;

use super::cyclotomic::{Lexer, parse_poly};
use super::{Rat, Scalar};
use crate::error::{parse_err, pre, Error, Result};

/// Power series known modulo `x^precision`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<S: Scalar> {
    field: S::Field,
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for TruncSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> TruncSeries<S> {
    pub fn zero(field: &S::Field, precision: usize) -> TruncSeries<S> {
        TruncSeries { field: field.clone(), coeffs: vec![S::zero(field); precision] }
    }

    pub fn one(field: &S::Field, precision: usize) -> TruncSeries<S> {
        let mut s = TruncSeries::zero(field, precision);
        if precision > 0 {
            s.coeffs[0] = S::one(field);
        }
        s
    }

    /// `x^m` (or 0 if `m >= precision`).
    pub fn monomial(field: &S::Field, m: usize, c: S, precision: usize) -> TruncSeries<S> {
        let mut s = TruncSeries::zero(field, precision);
        if m < precision {
            s.coeffs[m] = c;
        }
        s
    }

    /// Coefficients beyond `precision` are dropped; missing ones are zero.
    pub fn from_coeffs(field: &S::Field, mut coeffs: Vec<S>, precision: usize) -> TruncSeries<S> {
        coeffs.resize(precision, S::zero(field));
        TruncSeries { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(|| S::zero(&self.field))
    }

    pub fn set_coeff(&mut self, i: usize, c: S) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, `None` if zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact degree if the series is known to be a polynomial of lower degree
    /// than the precision; otherwise the highest nonzero index seen.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> TruncSeries<S> {
        let p = precision.min(self.precision());
        TruncSeries { field: self.field.clone(), coeffs: self.coeffs[..p].to_vec() }
    }

    pub fn add(&self, o: &TruncSeries<S>) -> TruncSeries<S> {
        let p = self.precision().min(o.precision());
        let coeffs = (0..p).map(|i| self.coeffs[i].plus(&o.coeffs[i])).collect();
        TruncSeries { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &TruncSeries<S>) -> TruncSeries<S> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TruncSeries<S> {
        TruncSeries { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.negate()).collect() }
    }

    pub fn scale(&self, c: &S) -> TruncSeries<S> {
        TruncSeries { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, o: &TruncSeries<S>) -> TruncSeries<S> {
        let p = self.precision().min(o.precision());
        let mut out = vec![S::zero(&self.field); p];
        for i in 0..p {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..p - i {
                if !o.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].plus(&self.coeffs[i].times(&o.coeffs[j]));
                }
            }
        }
        TruncSeries { field: self.field.clone(), coeffs: out }
    }

    /// Multiply by `x^m`; precision grows by `m`.
    pub fn shift_up(&self, m: usize) -> TruncSeries<S> {
        let mut coeffs = vec![S::zero(&self.field); m];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { field: self.field.clone(), coeffs }
    }

    /// Inverse; requires a unit constant term.
    pub fn inv(&self) -> Result<TruncSeries<S>> {
        let p = self.precision();
        if p == 0 {
            return Ok(self.clone());
        }
        let c0 = self.coeffs[0].try_inv().map_err(|_| Error::NotInvertible("series with zero constant term".into()))?;
        let mut out = vec![S::zero(&self.field); p];
        out[0] = c0.clone();
        for n in 1..p {
            let mut acc = S::zero(&self.field);
            for k in 1..=n {
                acc = acc.plus(&self.coeffs[k].times(&out[n - k]));
            }
            out[n] = acc.negate().times(&c0);
        }
        Ok(TruncSeries { field: self.field.clone(), coeffs: out })
    }

    pub fn derivative(&self) -> TruncSeries<S> {
        let p = self.precision();
        if p == 0 {
            return self.clone();
        }
        let coeffs = (1..p).map(|i| self.coeffs[i].scale(&Rat::int(i as i64))).collect();
        TruncSeries { field: self.field.clone(), coeffs }
    }

    /// Antiderivative with zero constant term; precision grows by one.
    pub fn integral(&self) -> TruncSeries<S> {
        let mut coeffs = vec![S::zero(&self.field)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rat::frac(1, i as i64 + 1)));
        }
        TruncSeries { field: self.field.clone(), coeffs }
    }

    /// `self(other(x))`; requires `other(0) = 0`.
    pub fn compose(&self, other: &TruncSeries<S>) -> Result<TruncSeries<S>> {
        if other.precision() > 0 && !other.coeffs[0].is_zero() {
            return pre("compose: inner series must vanish at 0");
        }
        let p = self.precision().min(other.precision());
        let mut acc = TruncSeries::zero(&self.field, p);
        for c in self.coeffs[..p].iter().rev() {
            acc = acc.mul(&other.truncate(p));
            let mut c0 = acc.coeff(0);
            c0 = c0.plus(c);
            acc.set_coeff(0, c0);
        }
        Ok(acc)
    }

    /// `s^(num/den)` for `s(0) = 1`, by the power recurrence.
    pub fn pow_rat(&self, alpha: &Rat) -> Result<TruncSeries<S>> {
        let p = self.precision();
        if p == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return pre("pow_rat: constant term must be 1");
        }
        let f = &self.field;
        let mut out = vec![S::zero(f); p];
        out[0] = S::one(f);
        let a1 = alpha + &Rat::one();
        for n in 1..p {
            let mut acc = S::zero(f);
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = &(&a1 * &Rat::int(k as i64)) - &Rat::int(n as i64);
                acc = acc.plus(&self.coeffs[k].times(&out[n - k]).scale(&w));
            }
            out[n] = acc.scale(&Rat::frac(1, n as i64));
        }
        Ok(TruncSeries { field: f.clone(), coeffs: out })
    }

    /// `d`-th root with constant term 1.
    pub fn nth_root(&self, d: u32) -> Result<TruncSeries<S>> {
        if d == 0 {
            return pre("nth_root: degree must be positive");
        }
        self.pow_rat(&Rat::frac(1, d as i64))
    }

    /// `exp(s)` for `s(0) = 0`.
    pub fn exp(&self) -> Result<TruncSeries<S>> {
        let p = self.precision();
        if p == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return pre("exp: constant term must be 0");
        }
        let f = &self.field;
        let mut out = vec![S::zero(f); p];
        out[0] = S::one(f);
        // n e_n = sum k s_k e_{n-k}
        for n in 1..p {
            let mut acc = S::zero(f);
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]).scale(&Rat::int(k as i64)));
                }
            }
            out[n] = acc.scale(&Rat::frac(1, n as i64));
        }
        Ok(TruncSeries { field: f.clone(), coeffs: out })
    }

    /// Value at 0.
    pub fn eval0(&self) -> S {
        self.coeff(0)
    }
}

impl<S: Scalar> fmt::Display for TruncSeries<S> {
    /// `c0 + c1*x + ... + O(x^M)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
                1 => "x".to_string(),
                _ => format!("x^{i}"),
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
            write!(f, "O(x^{})", self.precision())
        } else {
            write!(f, "{out} + O(x^{})", self.precision())
        }
    }
}

impl TruncSeries<Rat> {
    /// Parse `c0 + c1*x + ... + O(x^M)` with rational coefficients.
    pub fn parse(s: &str) -> Result<TruncSeries<Rat>> {
        let mut lx = Lexer::new(s);
        let mut coeffs = vec![];
        if !lx.eat_str("O(") {
            coeffs = parse_poly(&mut lx, b'x')?;
            if !lx.eat(b'+') || !lx.eat_str("O(") {
                return parse_err(lx.pos, "expected + O(x^M)");
            }
        }
        lx.expect(b'x')?;
        lx.expect(b'^')?;
        let m = lx.uint()? as usize;
        lx.expect(b')')?;
        if !lx.at_end() {
            return parse_err(lx.pos, "trailing input");
        }
        if m > 4096 {
            return parse_err(lx.pos, "precision too large");
        }
        if coeffs.iter().skip(m).any(|c| !c.is_zero()) {
            return parse_err(lx.pos, "term beyond O(x^M)");
        }
        Ok(TruncSeries::from_coeffs(&(), coeffs, m))
    }
}
