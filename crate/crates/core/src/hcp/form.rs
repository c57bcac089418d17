use std::collections::BTreeMap;
use std::sync::Arc;

use super::quasi::{falling, falling_value, to_falling_basis, QuasiPoly};
use crate::error::{pre, Error, Result};
use crate::exactnum::{CycElem, CycField, Rat, TruncSeries, UniPoly};

/// Homogeneous canonical form of order `r`:
/// `[sum f_{l,i} x^l A_i d^l + sum g_j B_j] D^r`, with `A_i = A_{k;i}`.
///
/// Every such operator is a weighted shift `x^m -> c(m) x^{m-r}`. Writing
/// `c(m) = lambda(m - r) (m)!/(m - r)!`, the function `lambda(n)` equals
/// `sum f_{l,i} xi^{-il} (n)_l xi^{in}` plus `g_j` at `n = j - 1`; products are
/// computed through `lambda`, which is how all the rewriting rules close up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hcp {
    field: Arc<CycField>,
    order: i64,
    /// `(l, i) -> f`
    xa: BTreeMap<(u32, u32), CycElem>,
    /// `j -> g`, `j >= 1`, and `j > -order` when `order < 0`.
    b: BTreeMap<u32, CycElem>,
}

impl Hcp {
    pub fn zero(field: &Arc<CycField>, order: i64) -> Hcp {
        Hcp { field: field.clone(), order, xa: BTreeMap::new(), b: BTreeMap::new() }
    }

    /// Canonicalising constructor: merges, drops zeros and the `B_j` killed by `D^r`.
    pub fn new(
        field: &Arc<CycField>,
        order: i64,
        xa: impl IntoIterator<Item = ((u32, u32), CycElem)>,
        b: impl IntoIterator<Item = (u32, CycElem)>,
    ) -> Result<Hcp> {
        let k = field.conductor();
        let mut h = Hcp::zero(field, order);
        for ((l, i), c) in xa {
            c.checked_field(&CycElem::zero(field))?;
            if i >= k {
                return pre(format!("A-index {i} out of range for modulus {k}"));
            }
            h.add_xa(l, i, &c);
        }
        for (j, c) in b {
            c.checked_field(&CycElem::zero(field))?;
            if j == 0 {
                return pre("B_j needs j >= 1");
            }
            h.add_b(j, &c);
        }
        h.normalise();
        Ok(h)
    }

    pub(crate) fn add_xa(&mut self, l: u32, i: u32, c: &CycElem) {
        if c.is_zero() {
            return;
        }
        let e = self.xa.entry((l, i)).or_insert_with(|| CycElem::zero(&self.field));
        *e = e.add(c);
        if e.is_zero() {
            self.xa.remove(&(l, i));
        }
    }

    pub(crate) fn add_b(&mut self, j: u32, c: &CycElem) {
        if c.is_zero() {
            return;
        }
        let e = self.b.entry(j).or_insert_with(|| CycElem::zero(&self.field));
        *e = e.add(c);
        if e.is_zero() {
            self.b.remove(&j);
        }
    }

    fn normalise(&mut self) {
        if self.order < 0 {
            let u = (-self.order) as u32;
            self.b.retain(|&j, _| j > u);
        }
    }

    /// Single atom `c x^l A_i d^l D^r`.
    pub fn atom_x(field: &Arc<CycField>, l: u32, i: u32, order: i64, c: CycElem) -> Hcp {
        Hcp::new(field, order, [((l, i % field.conductor()), c)], []).expect("valid atom")
    }

    /// Single atom `c B_j D^r`.
    pub fn atom_b(field: &Arc<CycField>, j: u32, order: i64, c: CycElem) -> Hcp {
        Hcp::new(field, order, [], [(j, c)]).expect("valid atom")
    }

    /// `D^r`
    pub fn shift_op(field: &Arc<CycField>, order: i64) -> Hcp {
        Hcp::atom_x(field, 0, 0, order, CycElem::rat(field, Rat::one()))
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.conductor()
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn xa(&self) -> &BTreeMap<(u32, u32), CycElem> {
        &self.xa
    }

    pub fn b(&self) -> &BTreeMap<u32, CycElem> {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.xa.is_empty() && self.b.is_empty()
    }

    /// Largest `l` with a nonzero `x^l A_i d^l` atom; `None` stands for `-inf`.
    pub fn sdeg_a(&self) -> Option<u32> {
        self.xa.keys().map(|k| k.0).max()
    }

    /// Largest `j` with a nonzero `B_j`; `None` stands for `-inf`.
    pub fn sdeg_b(&self) -> Option<u32> {
        self.b.keys().max().copied()
    }

    /// Whether any `A_i` with `i > 0` occurs.
    pub fn has_a(&self) -> bool {
        self.xa.keys().any(|k| k.1 != 0)
    }

    /// Smallest `n` at which `lambda` matters.
    fn n_min(order: i64) -> i64 {
        0.max(-order)
    }

    pub fn symbol(&self) -> QuasiPoly {
        let mut q = QuasiPoly::zero(&self.field);
        for (&(l, i), c) in &self.xa {
            let tw = CycElem::xi_pow(&self.field, -(i as i64) * l as i64);
            q.add_part(i, &falling(&self.field, l).scale(&c.mul(&tw)));
        }
        q
    }

    /// Inverse of [`Hcp::symbol`] plus point values at `n = j - 1`.
    pub fn from_symbol(field: &Arc<CycField>, order: i64, phi: &QuasiPoly, points: BTreeMap<u32, CycElem>) -> Hcp {
        let mut h = Hcp::zero(field, order);
        for (&i, p) in &phi.parts {
            for (l, a) in to_falling_basis(p).into_iter().enumerate() {
                let tw = CycElem::xi_pow(field, i as i64 * l as i64);
                h.add_xa(l as u32, i, &a.mul(&tw));
            }
        }
        for (j, c) in points {
            h.add_b(j, &c);
        }
        h.normalise();
        h
    }

    /// `lambda(n)` for `n` in the domain `n >= max(0, -order)`.
    pub fn lambda(&self, phi: &QuasiPoly, n: i64) -> CycElem {
        let mut v = phi.eval(n);
        if n >= 0 {
            if let Some(g) = self.b.get(&((n + 1) as u32)) {
                v = v.add(g);
            }
        }
        v
    }

    /// Weight `c(m)` of `x^m -> c(m) x^{m - order}`.
    pub fn weight_at(&self, m: u32) -> CycElem {
        self.weight_with(&self.symbol(), m)
    }

    fn weight_with(&self, phi: &QuasiPoly, m: u32) -> CycElem {
        let r = self.order;
        let m = m as i64;
        if r >= 0 {
            if m < r {
                return CycElem::zero(&self.field);
            }
            self.lambda(phi, m - r).scale(&falling_value(m, r as u32))
        } else {
            let u = -r;
            let ratio = falling_value(m + u, u as u32).inv().expect("positive");
            self.lambda(phi, m + u).scale(&ratio)
        }
    }

    pub fn add(&self, o: &Hcp) -> Result<Hcp> {
        if self.order != o.order {
            return pre("adding forms of different orders; use Hcpc");
        }
        self.same_field(o)?;
        let mut out = self.clone();
        for (&(l, i), c) in &o.xa {
            out.add_xa(l, i, c);
        }
        for (&j, c) in &o.b {
            out.add_b(j, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Hcp {
        self.scale(&CycElem::rat(&self.field, Rat::int(-1)))
    }

    pub fn scale(&self, c: &CycElem) -> Hcp {
        let mut out = Hcp::zero(&self.field, self.order);
        for (&(l, i), v) in &self.xa {
            out.add_xa(l, i, &v.mul(c));
        }
        for (&j, v) in &self.b {
            out.add_b(j, &v.mul(c));
        }
        out
    }

    fn same_field(&self, o: &Hcp) -> Result<()> {
        if self.modulus() != o.modulus() {
            return Err(Error::FieldMismatch(self.modulus(), o.modulus()));
        }
        Ok(())
    }

    /// Product of homogeneous forms: `lambda_{HM}(n) = lambda_H(n) lambda_M(n + ord H)`
    /// away from the boundary `n + ord H < 0`, where the product vanishes.
    pub fn mul(&self, o: &Hcp) -> Result<Hcp> {
        self.same_field(o)?;
        let f = &self.field;
        let r = self.order;
        let t = r + o.order;
        if self.is_zero() || o.is_zero() {
            return Ok(Hcp::zero(f, t));
        }
        let ph = self.symbol();
        let pm = o.symbol();
        let prod = ph.mul(&pm.shift(r));
        let nmin = Hcp::n_min(t);
        let mut cand: Vec<i64> = vec![];
        cand.extend(self.b.keys().map(|&j| j as i64 - 1));
        cand.extend(o.b.keys().map(|&j| j as i64 - 1 - r));
        if r < 0 {
            cand.extend(0..-r);
        }
        cand.retain(|&n| n >= nmin);
        cand.sort_unstable();
        cand.dedup();
        let mut points = BTreeMap::new();
        for n in cand {
            let truth = if n + r < 0 {
                CycElem::zero(f)
            } else {
                self.lambda(&ph, n).mul(&o.lambda(&pm, n + r))
            };
            let g = truth.sub(&prod.eval(n));
            if !g.is_zero() {
                points.insert((n + 1) as u32, g);
            }
        }
        Ok(Hcp::from_symbol(f, t, &prod, points))
    }

    /// Totally free of `B`: `(H D^p)` has no `B` atoms for every integer `p`.
    /// Equivalent to: no `B` atoms, and for order `-u < 0`, `lambda(n) = 0` for `n < u`.
    pub fn is_totally_free_b(&self) -> bool {
        if !self.b.is_empty() {
            return false;
        }
        if self.order < 0 {
            let phi = self.symbol();
            return (0..-self.order).all(|n| phi.eval(n).is_zero());
        }
        true
    }

    /// `A_{a;i} = A_{b; i b/a}`: re-express over modulus `b`, a multiple of the current one.
    pub fn rescale(&self, b: u32) -> Result<Hcp> {
        let a = self.modulus();
        if b == 0 || b % a != 0 {
            return pre(format!("rescale: {a} does not divide {b}"));
        }
        let nf = CycField::new(b)?;
        let r = b / a;
        let mut out = Hcp::zero(&nf, self.order);
        for (&(l, i), c) in &self.xa {
            out.add_xa(l, i * r, &c.embed(&nf)?);
        }
        for (&j, c) in &self.b {
            out.add_b(j, &c.embed(&nf)?);
        }
        Ok(out)
    }

    pub fn to_hcpc(&self) -> Hcpc {
        let mut h = Hcpc::zero(&self.field);
        h.add_hcp(self);
        h
    }
}

/// Finite sum of homogeneous forms of distinct orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hcpc {
    field: Arc<CycField>,
    comps: BTreeMap<i64, Hcp>,
}

impl Hcpc {
    pub fn zero(field: &Arc<CycField>) -> Hcpc {
        Hcpc { field: field.clone(), comps: BTreeMap::new() }
    }

    pub fn one(field: &Arc<CycField>) -> Hcpc {
        Hcp::shift_op(field, 0).to_hcpc()
    }

    pub fn scalar(c: CycElem) -> Hcpc {
        let f = c.ring().clone();
        Hcp::atom_x(&f, 0, 0, 0, c).to_hcpc()
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.conductor()
    }

    pub fn components(&self) -> &BTreeMap<i64, Hcp> {
        &self.comps
    }

    pub fn component(&self, r: i64) -> Hcp {
        self.comps.get(&r).cloned().unwrap_or_else(|| Hcp::zero(&self.field, r))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_hcp(&mut self, h: &Hcp) {
        assert_eq!(h.modulus(), self.modulus(), "modulus mismatch");
        if h.is_zero() {
            return;
        }
        let r = h.order();
        let s = match self.comps.remove(&r) {
            Some(cur) => cur.add(h).expect("same order and modulus"),
            None => h.clone(),
        };
        if !s.is_zero() {
            self.comps.insert(r, s);
        }
    }

    pub fn add(&self, o: &Hcpc) -> Result<Hcpc> {
        if self.modulus() != o.modulus() {
            return Err(Error::FieldMismatch(self.modulus(), o.modulus()));
        }
        let mut out = self.clone();
        for h in o.comps.values() {
            out.add_hcp(h);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Hcpc {
        let mut out = Hcpc::zero(&self.field);
        for h in self.comps.values() {
            out.add_hcp(&h.neg());
        }
        out
    }

    pub fn sub(&self, o: &Hcpc) -> Result<Hcpc> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &CycElem) -> Hcpc {
        let mut out = Hcpc::zero(&self.field);
        for h in self.comps.values() {
            out.add_hcp(&h.scale(c));
        }
        out
    }

    pub fn mul(&self, o: &Hcpc) -> Result<Hcpc> {
        if self.modulus() != o.modulus() {
            return Err(Error::FieldMismatch(self.modulus(), o.modulus()));
        }
        let mut out = Hcpc::zero(&self.field);
        for a in self.comps.values() {
            for b in o.comps.values() {
                out.add_hcp(&a.mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Hcpc) -> Result<Hcpc> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<Hcpc> {
        let mut acc = Hcpc::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn sdeg_a(&self) -> Option<u32> {
        self.comps.values().filter_map(|h| h.sdeg_a()).max()
    }

    pub fn sdeg_b(&self) -> Option<u32> {
        self.comps.values().filter_map(|h| h.sdeg_b()).max()
    }

    /// Highest order of a nonzero component.
    pub fn ord(&self) -> Option<i64> {
        self.comps.keys().next_back().copied()
    }

    pub fn is_totally_free_b(&self) -> bool {
        self.comps.values().all(|h| h.is_totally_free_b())
    }

    pub fn rescale(&self, b: u32) -> Result<Hcpc> {
        let nf = CycField::new(b)?;
        let mut out = Hcpc::zero(&nf);
        for h in self.comps.values() {
            out.add_hcp(&h.rescale(b)?);
        }
        Ok(out)
    }

    /// Exact image of `x^m`, as `degree -> coefficient`.
    pub fn act_monomial(&self, m: u32) -> BTreeMap<u32, CycElem> {
        let mut out: BTreeMap<u32, CycElem> = BTreeMap::new();
        for h in self.comps.values() {
            let c = h.weight_at(m);
            let deg = m as i64 - h.order();
            if c.is_zero() || deg < 0 {
                continue;
            }
            let e = out.entry(deg as u32).or_insert_with(|| CycElem::zero(&self.field));
            *e = e.add(&c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Action on a truncated series; the result is known to `precision - max(0, ord)`.
    pub fn act(&self, f: &TruncSeries<CycElem>) -> Result<TruncSeries<CycElem>> {
        if f.field().conductor() != self.modulus() {
            return Err(Error::FieldMismatch(f.field().conductor(), self.modulus()));
        }
        let top = self.ord().unwrap_or(0).max(0) as usize;
        let prec = f.precision();
        if prec <= top {
            return Err(Error::PrecisionExhausted { needed: top + 1, available: prec });
        }
        let out_prec = prec - top;
        let mut out = vec![CycElem::zero(&self.field); out_prec];
        let syms: Vec<(&Hcp, QuasiPoly)> = self.comps.values().map(|h| (h, h.symbol())).collect();
        for (m, a) in f.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, phi) in &syms {
                let deg = m as i64 - h.order();
                if deg < 0 || deg as usize >= out_prec {
                    continue;
                }
                let c = h.weight_with(phi, m as u32);
                if !c.is_zero() {
                    out[deg as usize] = out[deg as usize].add(&a.mul(&c));
                }
            }
        }
        Ok(TruncSeries::from_coeffs(&self.field, out, out_prec))
    }
}

/// `(n)_l` as a polynomial over Q(xi_k), exposed for oracles.
pub fn falling_poly(field: &Arc<CycField>, l: u32) -> UniPoly<CycElem> {
    falling(field, l)
}
