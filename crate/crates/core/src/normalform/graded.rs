use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, pre, Error, Result};
use crate::exactnum::{CycElem, CycField, Rat, TruncSeries};
use crate::hcp::{comp_from_json, comp_to_json, invert_order0, CompJson, Hcp, Hcpc};
use crate::weyl::{D1Op, WeylOp};

/// Element of the completed operator ring known through the orders `top - depth < m <= top`.
///
/// For a nonzero value `top` is the true order; a zero value keeps the window it was computed in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedOp {
    field: Arc<CycField>,
    top: i64,
    depth: usize,
    comps: BTreeMap<i64, Hcp>,
}

impl GradedOp {
    pub fn zero(field: &Arc<CycField>, top: i64, depth: usize) -> GradedOp {
        GradedOp { field: field.clone(), top, depth, comps: BTreeMap::new() }
    }

    pub fn one(field: &Arc<CycField>, depth: usize) -> GradedOp {
        GradedOp::from_hcpc(&Hcpc::one(field), 0, depth)
    }

    /// Window `(top - depth, top]` of an exact element; components above `top` are not allowed.
    pub fn from_hcpc(h: &Hcpc, top: i64, depth: usize) -> GradedOp {
        assert!(h.ord().is_none_or(|o| o <= top), "component above the window top");
        let low = top - depth as i64;
        let comps = h.components().range(low + 1..).map(|(&m, c)| (m, c.clone())).collect();
        let mut g = GradedOp { field: h.field().clone(), top, depth, comps };
        g.settle();
        g
    }

    fn settle(&mut self) {
        self.comps.retain(|_, h| !h.is_zero());
        if let Some(&o) = self.comps.keys().next_back() {
            let low = self.low();
            self.top = o;
            self.depth = (o - low) as usize;
        }
    }

    /// Orders `<= low()` are unknown.
    pub fn low(&self) -> i64 {
        self.top - self.depth as i64
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.conductor()
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ord(&self) -> Option<i64> {
        self.comps.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<i64, Hcp> {
        &self.comps
    }

    pub fn component(&self, m: i64) -> Result<Hcp> {
        if m <= self.low() {
            return Err(Error::DepthExhausted { needed: (self.top - m + 1) as usize, available: self.depth });
        }
        Ok(self.comps.get(&m).cloned().unwrap_or_else(|| Hcp::zero(&self.field, m)))
    }

    /// The highest component, `sigma`.
    pub fn symbol(&self) -> Option<&Hcp> {
        self.comps.values().next_back()
    }

    pub fn to_hcpc(&self) -> Hcpc {
        let mut h = Hcpc::zero(&self.field);
        for c in self.comps.values() {
            h.add_hcp(c);
        }
        h
    }

    /// Keep only the first `depth` orders below the top.
    pub fn truncate(&self, depth: usize) -> Result<GradedOp> {
        if depth > self.depth {
            return Err(Error::DepthExhausted { needed: depth, available: self.depth });
        }
        Ok(GradedOp::from_hcpc(&self.to_hcpc(), self.top, depth))
    }

    /// Exact Weyl element over modulus `k`.
    pub fn from_weyl(op: &WeylOp<Rat>, k: u32, depth: usize) -> Result<GradedOp> {
        let field = CycField::new(k)?;
        let mut h = Hcpc::zero(&field);
        for (&(i, j), c) in op.terms() {
            h.add_hcp(&Hcp::atom_x(&field, i, 0, j as i64 - i as i64, CycElem::rat(&field, c.clone())));
        }
        let top = h.ord().unwrap_or(0);
        Ok(GradedOp::from_hcpc(&h, top, depth))
    }

    /// Series operator over modulus `k`: the term `a x^i d^j` lands in order `j - i`.
    /// Needs `precision >= ord_d(P) - ord(P) + depth`.
    pub fn from_d1(op: &D1Op<Rat>, k: u32, depth: usize) -> Result<GradedOp> {
        let field = CycField::new(k)?;
        let Some(p) = op.order() else {
            return Ok(GradedOp::zero(&field, 0, depth));
        };
        let prec = op.precision();
        let top = op
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(j, a)| a.valuation().map(|v| j as i64 - v as i64))
            .max()
            .unwrap_or(0);
        let need = (p as i64 - top + depth as i64).max(0) as usize;
        if prec < need {
            return Err(Error::PrecisionExhausted { needed: need, available: prec });
        }
        let low = top - depth as i64;
        let mut h = Hcpc::zero(&field);
        for (j, a) in op.coeffs().iter().enumerate() {
            for (i, c) in a.coeffs().iter().enumerate() {
                let m = j as i64 - i as i64;
                if m <= low || c.is_zero() {
                    continue;
                }
                h.add_hcp(&Hcp::atom_x(&field, i as u32, 0, m, CycElem::rat(&field, c.clone())));
            }
        }
        Ok(GradedOp::from_hcpc(&h, top, depth))
    }

    fn check(&self, o: &GradedOp) -> Result<()> {
        if self.modulus() != o.modulus() {
            return Err(Error::FieldMismatch(self.modulus(), o.modulus()));
        }
        Ok(())
    }

    /// Bring both to the least common modulus.
    pub fn rescale(&self, b: u32) -> Result<GradedOp> {
        let h = self.to_hcpc().rescale(b)?;
        Ok(GradedOp { field: h.field().clone(), top: self.top, depth: self.depth, comps: h.components().clone() })
    }

    pub fn add(&self, o: &GradedOp) -> Result<GradedOp> {
        self.check(o)?;
        let top = self.top.max(o.top);
        let low = self.low().max(o.low());
        let h = self.to_hcpc().add(&o.to_hcpc())?;
        Ok(GradedOp::from_hcpc(&h, top, (top - low) as usize))
    }

    pub fn neg(&self) -> GradedOp {
        GradedOp { field: self.field.clone(), top: self.top, depth: self.depth, comps: self.comps.iter().map(|(&m, c)| (m, c.neg())).collect() }
    }

    pub fn sub(&self, o: &GradedOp) -> Result<GradedOp> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &CycElem) -> GradedOp {
        let mut g = self.clone();
        g.comps = self.comps.iter().map(|(&m, h)| (m, h.scale(c))).collect();
        g.settle();
        g
    }

    /// Product; the window is `(top_a + top_b - min(depth_a, depth_b), top_a + top_b]`.
    pub fn mul(&self, o: &GradedOp) -> Result<GradedOp> {
        self.check(o)?;
        let top = self.top + o.top;
        let depth = self.depth.min(o.depth);
        let low = top - depth as i64;
        let mut acc: BTreeMap<i64, Hcp> = BTreeMap::new();
        for (&ma, a) in &self.comps {
            for (&mb, b) in &o.comps {
                let m = ma + mb;
                if m <= low {
                    continue;
                }
                let p = a.mul(b)?;
                let e = acc.entry(m).or_insert_with(|| Hcp::zero(&self.field, m));
                *e = e.add(&p)?;
            }
        }
        let mut g = GradedOp { field: self.field.clone(), top, depth, comps: acc };
        g.settle();
        Ok(g)
    }

    pub fn commutator(&self, o: &GradedOp) -> Result<GradedOp> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Inverse of an order-0 unit by the graded recursion
    /// `X_0 = S_0^{-1}`, `X_{-t} = -S_0^{-1} sum_{s >= 1} S_{-s} X_{s-t}`.
    pub fn invert_unit(&self) -> Result<GradedOp> {
        if self.ord() != Some(0) {
            return pre(format!("invert_unit needs ord = 0, got {:?}", self.ord()));
        }
        let s0 = &self.comps[&0];
        let s0_inv = invert_order0(s0)?;
        let n = self.depth;
        let mut xs: Vec<Hcp> = vec![s0_inv.clone()];
        for t in 1..n as i64 {
            let mut acc = Hcp::zero(&self.field, -t);
            for s in 1..=t {
                if let Some(ss) = self.comps.get(&-s) {
                    acc = acc.add(&ss.mul(&xs[(t - s) as usize])?)?;
                }
            }
            xs.push(s0_inv.mul(&acc)?.neg());
        }
        let mut g = GradedOp::zero(&self.field, 0, n);
        for (t, x) in xs.into_iter().enumerate() {
            if !x.is_zero() {
                g.comps.insert(-(t as i64), x);
            }
        }
        g.settle();
        Ok(g)
    }

    /// `a b a^{-1}`.
    pub fn conjugate(&self, b: &GradedOp) -> Result<GradedOp> {
        self.mul(b)?.mul(&self.invert_unit()?)
    }

    /// Action on a series; correct below `min(precision - max(0, top), -low)`.
    pub fn act(&self, f: &TruncSeries<CycElem>) -> Result<TruncSeries<CycElem>> {
        let low = self.low();
        if low >= 0 {
            return Err(Error::DepthExhausted { needed: (self.top + 1) as usize, available: self.depth });
        }
        let out = self.to_hcpc().act(f)?;
        let p = out.precision().min((-low) as usize);
        Ok(out.truncate(p))
    }

    /// Every known component is annihilated by `[d^k, .]`.
    pub fn is_central(&self, k: u32) -> Result<bool> {
        for h in self.comps.values() {
            if !crate::hcp::is_central(&h.to_hcpc(), k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    modulus: u32,
    top: i64,
    depth: usize,
    components: Vec<CompJson>,
}

impl GradedOp {
    /// `{modulus, top, depth, components: [...]}`, components by decreasing order.
    pub fn to_json(&self) -> serde_json::Value {
        let v = GradedJson {
            modulus: self.modulus(),
            top: self.top,
            depth: self.depth,
            components: self.comps.values().rev().map(comp_to_json).collect(),
        };
        serde_json::to_value(v).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GradedOp> {
        let j: GradedJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        if j.modulus == 0 || j.modulus > 720 {
            return parse_err(0, "modulus out of range 1..=720");
        }
        if j.depth == 0 || j.depth > 1 << 16 || j.top.abs() > 1 << 20 {
            return parse_err(0, "window out of range");
        }
        let field = CycField::new(j.modulus)?;
        let low = j.top - j.depth as i64;
        let mut g = GradedOp::zero(&field, j.top, j.depth);
        for c in j.components {
            if c.order > j.top || c.order <= low {
                return parse_err(0, format!("component of order {} outside the window", c.order));
            }
            if g.comps.contains_key(&c.order) {
                return parse_err(0, format!("duplicate component of order {}", c.order));
            }
            let h = comp_from_json(c, &field)?;
            if !h.is_zero() {
                g.comps.insert(h.order(), h);
            }
        }
        if g.comps.keys().next_back().is_some_and(|&o| o != j.top) {
            return parse_err(0, "top component is zero");
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let s = self.to_hcpc().to_text();
        let (body, k) = s.rsplit_once(" @").expect("modulus suffix");
        format!("{body} + O(D^{}) @{k}", self.low())
    }
}
