use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactnum::{Rat, Scalar};

/// Normally ordered element `sum c_ij x^i d^j` of `A_1`, no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOp<S: Scalar> {
    field: S::Field,
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> fmt::Debug for WeylOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `C(b,k) (c)_k` for k = 0..=min(b,c): the normal ordering coefficients of `d^b x^c`.
fn ordering_coeffs(b: u32, c: u32) -> Vec<Rat> {
    let mut out = Vec::with_capacity(b.min(c) as usize + 1);
    let mut cur = BigInt::one();
    out.push(Rat::one());
    for k in 0..b.min(c) {
        cur *= (b - k) as u64 * (c - k) as u64;
        cur /= k + 1;
        out.push(Rat::big(cur.clone()));
    }
    out
}

impl<S: Scalar> WeylOp<S> {
    pub fn zero(field: &S::Field) -> WeylOp<S> {
        WeylOp { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &S::Field, c: S) -> WeylOp<S> {
        WeylOp::monomial(field, 0, 0, c)
    }

    pub fn one(field: &S::Field) -> WeylOp<S> {
        WeylOp::constant(field, S::one(field))
    }

    pub fn x(field: &S::Field) -> WeylOp<S> {
        WeylOp::monomial(field, 1, 0, S::one(field))
    }

    pub fn d(field: &S::Field) -> WeylOp<S> {
        WeylOp::monomial(field, 0, 1, S::one(field))
    }

    /// `c x^i d^j`
    pub fn monomial(field: &S::Field, i: u32, j: u32, c: S) -> WeylOp<S> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        WeylOp { field: field.clone(), terms }
    }

    /// Builds from possibly repeated `(i, j, c)` triples.
    pub fn from_terms(field: &S::Field, ts: impl IntoIterator<Item = (u32, u32, S)>) -> WeylOp<S> {
        let mut op = WeylOp::zero(field);
        for (i, j, c) in ts {
            op.add_term(i, j, &c);
        }
        op
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), S> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| S::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => {
                *v = v.plus(c);
                if v.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    pub fn add(&self, o: &WeylOp<S>) -> WeylOp<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, o: &WeylOp<S>) -> WeylOp<S> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> WeylOp<S> {
        WeylOp { field: self.field.clone(), terms: self.terms.iter().map(|(k, c)| (*k, c.negate())).collect() }
    }

    pub fn scale(&self, c: &S) -> WeylOp<S> {
        if c.is_zero() {
            return WeylOp::zero(&self.field);
        }
        WeylOp { field: self.field.clone(), terms: self.terms.iter().map(|(k, v)| (*k, v.times(c))).collect() }
    }

    pub fn mul(&self, o: &WeylOp<S>) -> WeylOp<S> {
        let mut acc: HashMap<(u32, u32), S> = HashMap::new();
        let mut cache: HashMap<(u32, u32), Vec<S>> = HashMap::new();
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &o.terms {
                let prod = c1.times(c2);
                let w = cache
                    .entry((b, c))
                    .or_insert_with(|| ordering_coeffs(b, c).iter().map(|r| S::from_rat(&self.field, r)).collect());
                for (k, wk) in w.iter().enumerate() {
                    let k = k as u32;
                    let key = (a + c - k, b + d - k);
                    let t = if k == 0 { prod.clone() } else { prod.times(wk) };
                    match acc.get_mut(&key) {
                        Some(v) => *v = v.plus(&t),
                        None => {
                            acc.insert(key, t);
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        WeylOp { field: self.field.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> WeylOp<S> {
        let mut acc = WeylOp::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[self, o] = self*o - o*self`
    pub fn commutator(&self, o: &WeylOp<S>) -> WeylOp<S> {
        self.mul(o).sub(&o.mul(self))
    }

    /// `d`-order (`v_{0,1}`); `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, j)| j as i64).max()
    }

    /// `x`-order (`v_{1,0}`); `None` for zero.
    pub fn ord_x(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, _)| i as i64).max()
    }

    /// Order in the operator ring: `max(j - i)` over the support.
    pub fn bord(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    /// Total degree `v_{1,1}`.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| (i + j) as i64).max()
    }

    /// Coefficient of `d^j` as a polynomial in `x`, low degree first.
    pub fn d_coeff(&self, j: u32) -> Vec<S> {
        let mut out = vec![];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                if out.len() <= i as usize {
                    out.resize(i as usize + 1, S::zero(&self.field));
                }
                out[i as usize] = c.clone();
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, field: &T::Field, f: impl Fn(&S) -> T) -> WeylOp<T> {
        WeylOp::from_terms(field, self.terms.iter().map(|(&(i, j), c)| (i, j, f(c))))
    }
}

impl<S: Scalar> fmt::Display for WeylOp<S> {
    /// Canonical text, terms in lexicographic `(i, j)` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (&(i, j), c) in &self.terms {
            let (neg, mag) = c.signed_text();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = vec![];
            match i {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("d".to_string()),
                _ => factors.push(format!("d^{j}")),
            }
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        write!(f, "{out}")
    }
}
