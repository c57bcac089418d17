//! Quasi-polynomials `phi(n) = sum_i xi^{i n} P_i(n)`: the eigenvalue functions of
//! order-0 forms on the monomial basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactnum::{CycElem, CycField, Rat, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiPoly {
    pub field: Arc<CycField>,
    /// `i -> P_i`, no zero polynomials.
    pub parts: BTreeMap<u32, UniPoly<CycElem>>,
}

pub fn falling(field: &Arc<CycField>, l: u32) -> UniPoly<CycElem> {
    let mut acc = UniPoly::constant(field, CycElem::rat(field, Rat::one()));
    for t in 0..l {
        acc = acc.mul(&UniPoly::linear_root(field, &CycElem::rat(field, Rat::int(t as i64))));
    }
    acc
}

/// `(m)_l` as an exact rational.
pub fn falling_value(m: i64, l: u32) -> Rat {
    let mut acc = Rat::one();
    for t in 0..l as i64 {
        acc *= &Rat::int(m - t);
    }
    acc
}

/// Coefficients `a_l` with `P(n) = sum a_l (n)_l`.
pub fn to_falling_basis(p: &UniPoly<CycElem>) -> Vec<CycElem> {
    let Some(deg) = p.degree() else {
        return vec![];
    };
    let mut vals: Vec<CycElem> = (0..=deg as i64).map(|n| p.eval_int(n)).collect();
    let mut out = Vec::with_capacity(deg + 1);
    let mut fact = Rat::one();
    for l in 0..=deg {
        if l > 0 {
            fact *= &Rat::int(l as i64);
        }
        out.push(vals[0].scale(&fact.inv().unwrap()));
        for t in 0..vals.len() - 1 {
            vals[t] = vals[t + 1].sub(&vals[t]);
        }
        vals.pop();
    }
    out
}

impl QuasiPoly {
    pub fn zero(field: &Arc<CycField>) -> QuasiPoly {
        QuasiPoly { field: field.clone(), parts: BTreeMap::new() }
    }

    pub fn k(&self) -> u32 {
        self.field.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_part(&mut self, i: u32, p: &UniPoly<CycElem>) {
        let i = i % self.k();
        let cur = self.parts.remove(&i).unwrap_or_else(|| UniPoly::zero(&self.field));
        let s = cur.add(p);
        if !s.is_zero() {
            self.parts.insert(i, s);
        }
    }

    pub fn add(&self, o: &QuasiPoly) -> QuasiPoly {
        let mut out = self.clone();
        for (&i, p) in &o.parts {
            out.add_part(i, p);
        }
        out
    }

    pub fn neg(&self) -> QuasiPoly {
        let m1 = CycElem::rat(&self.field, Rat::int(-1));
        QuasiPoly { field: self.field.clone(), parts: self.parts.iter().map(|(i, p)| (*i, p.scale(&m1))).collect() }
    }

    pub fn sub(&self, o: &QuasiPoly) -> QuasiPoly {
        self.add(&o.neg())
    }

    pub fn eval(&self, n: i64) -> CycElem {
        let mut acc = CycElem::zero(&self.field);
        for (&i, p) in &self.parts {
            let v = p.eval_int(n);
            acc = acc.add(&CycElem::xi_pow(&self.field, i as i64 * n).mul(&v));
        }
        acc
    }

    /// `n -> phi(n + r)`
    pub fn shift(&self, r: i64) -> QuasiPoly {
        let mut out = QuasiPoly::zero(&self.field);
        for (&i, p) in &self.parts {
            let c = CycElem::xi_pow(&self.field, i as i64 * r);
            out.add_part(i, &p.shift(r).scale(&c));
        }
        out
    }

    pub fn mul(&self, o: &QuasiPoly) -> QuasiPoly {
        let mut out = QuasiPoly::zero(&self.field);
        for (&i, p) in &self.parts {
            for (&j, q) in &o.parts {
                out.add_part(i + j, &p.mul(q));
            }
        }
        out
    }

    /// Largest polynomial degree among the parts.
    pub fn max_degree(&self) -> Option<usize> {
        self.parts.values().filter_map(|p| p.degree()).max()
    }
}
