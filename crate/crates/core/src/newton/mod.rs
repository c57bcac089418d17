//! Supports, weight degrees and top parts of Weyl-algebra elements, and the
//! commutator weight laws relating them to the Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{pre, Result};
use crate::exactnum::{Rat, Scalar};
use crate::weyl::WeylOp;

/// Weight `(sigma, rho)` on monomials `x^i y^j`: `sigma i + rho j`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Weight {
    pub sigma: Rat,
    pub rho: Rat,
}

impl Weight {
    pub fn new(sigma: Rat, rho: Rat) -> Result<Weight> {
        if (&sigma + &rho).is_negative() || (&sigma + &rho).is_zero() {
            return pre("weight needs sigma + rho > 0");
        }
        Ok(Weight { sigma, rho })
    }

    pub fn ints(sigma: i64, rho: i64) -> Weight {
        Weight::new(Rat::int(sigma), Rat::int(rho)).expect("valid weight")
    }

    pub fn of(&self, i: u32, j: u32) -> Rat {
        &(&self.sigma * &Rat::int(i as i64)) + &(&self.rho * &Rat::int(j as i64))
    }

    pub fn sum(&self) -> Rat {
        &self.sigma + &self.rho
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.sigma, self.rho)
    }
}

/// Commutative polynomial in `x, y`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly<S: Scalar> {
    field: S::Field,
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> fmt::Debug for BivarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for BivarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // same surface syntax as operators, with y for the commuting symbol
        let op = WeylOp::from_terms(&self.field, self.terms.iter().map(|(&(i, j), c)| (i, j, c.clone())));
        write!(f, "{}", op.to_string().replace('d', "y"))
    }
}

impl<S: Scalar> BivarPoly<S> {
    pub fn zero(field: &S::Field) -> BivarPoly<S> {
        BivarPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(field: &S::Field, i: u32, j: u32, c: S) -> BivarPoly<S> {
        let mut p = BivarPoly::zero(field);
        p.add_term(i, j, &c);
        p
    }

    pub fn from_terms(field: &S::Field, ts: impl IntoIterator<Item = (u32, u32, S)>) -> BivarPoly<S> {
        let mut p = BivarPoly::zero(field);
        for (i, j, c) in ts {
            p.add_term(i, j, &c);
        }
        p
    }

    /// Symbol of a normally ordered operator (`d -> y`).
    pub fn from_weyl(op: &WeylOp<S>) -> BivarPoly<S> {
        BivarPoly { field: op.field().clone(), terms: op.terms().clone() }
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| S::zero(&self.field))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &S) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(|| S::zero(&self.field));
        *e = e.plus(c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, o: &BivarPoly<S>) -> BivarPoly<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, o: &BivarPoly<S>) -> BivarPoly<S> {
        self.add(&o.scale(&S::from_int(&self.field, -1)))
    }

    pub fn scale(&self, c: &S) -> BivarPoly<S> {
        BivarPoly::from_terms(&self.field, self.terms.iter().map(|(&(i, j), v)| (i, j, v.times(c))))
    }

    pub fn mul(&self, o: &BivarPoly<S>) -> BivarPoly<S> {
        let mut out = BivarPoly::zero(&self.field);
        for (&(a, b), c) in &self.terms {
            for (&(p, q), e) in &o.terms {
                out.add_term(a + p, b + q, &c.times(e));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BivarPoly<S> {
        let mut acc = BivarPoly::monomial(&self.field, 0, 0, S::one(&self.field));
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

    pub fn dx(&self) -> BivarPoly<S> {
        BivarPoly::from_terms(
            &self.field,
            self.terms.iter().filter(|(k, _)| k.0 > 0).map(|(&(i, j), c)| (i - 1, j, c.scale(&Rat::int(i as i64)))),
        )
    }

    pub fn dy(&self) -> BivarPoly<S> {
        BivarPoly::from_terms(
            &self.field,
            self.terms.iter().filter(|(k, _)| k.1 > 0).map(|(&(i, j), c)| (i, j - 1, c.scale(&Rat::int(j as i64)))),
        )
    }

    /// `v_w`, `None` for zero.
    pub fn weight_degree(&self, w: &Weight) -> Option<Rat> {
        self.terms.keys().map(|&(i, j)| w.of(i, j)).max()
    }

    pub fn top_part(&self, w: &Weight) -> BivarPoly<S> {
        let Some(v) = self.weight_degree(w) else {
            return self.clone();
        };
        BivarPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(k, _)| w.of(k.0, k.1) == v).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Terms of weight exactly `v`.
    pub fn part_at(&self, w: &Weight, v: &Rat) -> BivarPoly<S> {
        BivarPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(k, _)| &w.of(k.0, k.1) == v).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// `(deg_x, deg_y)` maxima.
    pub fn max_degrees(&self) -> Option<(u32, u32)> {
        if self.terms.is_empty() {
            return None;
        }
        Some((self.terms.keys().map(|k| k.0).max().unwrap(), self.terms.keys().map(|k| k.1).max().unwrap()))
    }

    /// Univariate part: coefficients of `x^i y^{j0}` (as `i -> c`).
    pub fn row_y(&self, j0: u32) -> BTreeMap<u32, S> {
        self.terms.iter().filter(|(k, _)| k.1 == j0).map(|(k, c)| (k.0, c.clone())).collect()
    }

    pub fn col_x(&self, i0: u32) -> BTreeMap<u32, S> {
        self.terms.iter().filter(|(k, _)| k.0 == i0).map(|(k, c)| (k.1, c.clone())).collect()
    }

    pub fn to_weyl(&self) -> WeylOp<S> {
        WeylOp::from_terms(&self.field, self.terms.iter().map(|(&(i, j), c)| (i, j, c.clone())))
    }
}

/// `{f, g} = f_x g_y - f_y g_x`
pub fn poisson<S: Scalar>(f: &BivarPoly<S>, g: &BivarPoly<S>) -> BivarPoly<S> {
    f.dx().mul(&g.dy()).sub(&f.dy().mul(&g.dx()))
}

pub fn weight_degree<S: Scalar>(p: &WeylOp<S>, w: &Weight) -> Option<Rat> {
    BivarPoly::from_weyl(p).weight_degree(w)
}

/// `f_{sigma,rho}(P)`
pub fn top_part<S: Scalar>(p: &WeylOp<S>, w: &Weight) -> BivarPoly<S> {
    BivarPoly::from_weyl(p).top_part(w)
}

/// Constant `c != 0` with `a = c b`, if any.
pub fn proportional<S: Scalar>(a: &BivarPoly<S>, b: &BivarPoly<S>) -> Option<S> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (k, bv) = b.terms.iter().next().unwrap();
    let av = a.terms.get(k)?;
    let c = av.times(&bv.try_inv().ok()?);
    if a == &b.scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// `c` with `g^v = c f^w`, exponents of either sign moved across.
pub fn proportional_tops<S: Scalar>(f: &BivarPoly<S>, g: &BivarPoly<S>, v: i64, w: i64) -> Option<S> {
    let lhs = g.pow(v.max(0) as u32).mul(&f.pow((-w).max(0) as u32));
    let rhs = f.pow(w.max(0) as u32).mul(&g.pow((-v).max(0) as u32));
    proportional(&lhs, &rhs)
}

/// Split of `[P, Q]` at the level `v_w(P) + v_w(Q) - sigma - rho`.
#[derive(Clone, Debug)]
pub struct DixmierSplit<S: Scalar> {
    pub v: Rat,
    pub w: Rat,
    pub level: Rat,
    pub t: WeylOp<S>,
    pub u: WeylOp<S>,
    /// `v_w(U) < level` (vacuous if `U = 0`).
    pub u_below: bool,
}

pub fn dixmier_split<S: Scalar>(p: &WeylOp<S>, q: &WeylOp<S>, wt: &Weight) -> Result<DixmierSplit<S>> {
    let (Some(v), Some(w)) = (weight_degree(p, wt), weight_degree(q, wt)) else {
        return pre("dixmier_split needs nonzero operands");
    };
    let level = &(&v + &w) - &wt.sum();
    let c = p.commutator(q);
    let mut t = WeylOp::zero(p.field());
    let mut u = WeylOp::zero(p.field());
    let mut u_below = true;
    for (&(i, j), coef) in c.terms() {
        let deg = wt.of(i, j);
        if deg == level {
            t.add_term(i, j, coef);
        } else {
            if deg > level {
                u_below = false;
            }
            u.add_term(i, j, coef);
        }
    }
    Ok(DixmierSplit { v, w, level, t, u, u_below })
}

/// Outcome of checking the four commutator weight laws on one pair.
#[derive(Clone, Debug, Serialize)]
pub struct DixmierReport {
    pub weight: String,
    pub v: String,
    pub w: String,
    /// every term of `[P,Q]` lies at or below the level
    pub part1_filtration: bool,
    /// `T = 0`, `{f1,g1} = 0`, and (integer degrees) proportional powers agree
    pub part2_equivalences: bool,
    /// `T = {g1, f1}` as polynomials
    pub part3_bracket: bool,
    /// `f_w(PQ) = f1 g1` and `v_w(PQ) = v + w`
    pub part4_product: bool,
    pub t_is_zero: bool,
}

impl DixmierReport {
    pub fn all_ok(&self) -> bool {
        self.part1_filtration && self.part2_equivalences && self.part3_bracket && self.part4_product
    }
}

/// Orientation: with `P = d`, `Q = x` one has `[d, x] = 1` while `{y, x} = -1`,
/// so the level part of `[P, Q]` equals `{g1, f1} = -{f1, g1}`.
pub fn check_dixmier<S: Scalar>(p: &WeylOp<S>, q: &WeylOp<S>, wt: &Weight) -> Result<DixmierReport> {
    let sp = dixmier_split(p, q, wt)?;
    let f1 = top_part(p, wt);
    let g1 = top_part(q, wt);
    let pb = poisson(&g1, &f1);
    let t_poly = BivarPoly::from_weyl(&sp.t);
    let part3 = t_poly == pb;
    let t_zero = sp.t.is_zero();
    let mut part2 = t_zero == pb.is_zero();
    if let (Some(vi), Some(wi)) = (sp.v.to_i64(), sp.w.to_i64()) {
        if wt.sigma.is_integer() && wt.rho.is_integer() {
            let prop = proportional_tops(&f1, &g1, vi, wi).is_some();
            part2 &= prop == t_zero;
        }
    }
    let pq = p.mul(q);
    let part4 = top_part(&pq, wt) == f1.mul(&g1) && weight_degree(&pq, wt) == Some(&sp.v + &sp.w);
    Ok(DixmierReport {
        weight: wt.to_string(),
        v: sp.v.to_string(),
        w: sp.w.to_string(),
        part1_filtration: sp.u_below,
        part2_equivalences: part2,
        part3_bracket: part3,
        part4_product: part4,
        t_is_zero: t_zero,
    })
}

/// End and start points of the `(1,0)` and `(0,1)` edges of the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corners {
    pub en10: (u32, u32),
    pub st10: (u32, u32),
    pub en01: (u32, u32),
    pub st01: (u32, u32),
}

pub fn corners<S: Scalar>(p: &WeylOp<S>) -> Result<Corners> {
    if p.is_zero() {
        return pre("corners of zero");
    }
    let b = BivarPoly::from_weyl(p);
    let v10 = p.ord_x().unwrap() as u32;
    let v01 = p.ord().unwrap() as u32;
    let col = b.col_x(v10);
    let row = b.row_y(v01);
    Ok(Corners {
        en10: (v10, *col.keys().max().unwrap()),
        st10: (v10, *col.keys().min().unwrap()),
        en01: (*row.keys().min().unwrap(), v01),
        st01: (*row.keys().max().unwrap(), v01),
    })
}

/// `(ord_x P, ord P)` lies in the support with both entries positive.
pub fn is_subrectangular<S: Scalar>(p: &WeylOp<S>) -> bool {
    match (p.ord_x(), p.ord()) {
        (Some(l), Some(k)) if l >= 1 && k >= 1 => !p.coeff(l as u32, k as u32).is_zero(),
        _ => false,
    }
}

/// Shape data of a subrectangular pair `P = phi(x)`, `Q = phi(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubrectData {
    /// `Hm(P) = x^{l n} y^{d n}`, `Hm(Q) = x^{l m} y^{d m}`
    pub hm_p: (u32, u32),
    pub hm_q: (u32, u32),
    pub d: u32,
    pub l: u32,
    pub n: u32,
    pub m: u32,
    /// `d / gcd(l, d)`
    pub ess_gcd: u32,
    /// `Hm(P) = rate * Hm(Q)` as exponent vectors, when proportional
    pub rate: Option<Rat>,
}

pub fn subrect_data<S: Scalar>(p: &WeylOp<S>, q: &WeylOp<S>) -> Result<SubrectData> {
    if !is_subrectangular(p) || !is_subrectangular(q) {
        return pre("subrect_data needs subrectangular P and Q");
    }
    let hp = (p.ord_x().unwrap() as u32, p.ord().unwrap() as u32);
    let hq = (q.ord_x().unwrap() as u32, q.ord().unwrap() as u32);
    let d = hp.1.gcd(&hq.1);
    let l = hp.0.gcd(&hq.0);
    let n = hp.1 / d;
    let m = hq.1 / d;
    let ess_gcd = d / l.gcd(&d);
    let rate = if hp.0 as u64 * hq.1 as u64 == hp.1 as u64 * hq.0 as u64 {
        Some(Rat::frac(hp.1 as i64, hq.1 as i64))
    } else {
        None
    };
    Ok(SubrectData { hm_p: hp, hm_q: hq, d, l, n, m, ess_gcd, rate })
}

/// `Hm(P) = c x^l y^k` as `(l, k)`, for subrectangular `P`.
pub fn hm<S: Scalar>(p: &WeylOp<S>) -> Option<(u32, u32)> {
    if is_subrectangular(p) {
        Some((p.ord_x()? as u32, p.ord()? as u32))
    } else {
        None
    }
}

impl std::str::FromStr for Weight {
    type Err = crate::Error;

    /// `sigma,rho` with rational entries, e.g. `1,1` or `1/2,1`.
    fn from_str(s: &str) -> Result<Weight> {
        let Some((a, b)) = s.split_once(',') else {
            return Err(crate::Error::Parse { pos: 0, msg: format!("weight {s:?}: expected sigma,rho") });
        };
        Weight::new(a.trim().parse()?, b.trim().parse()?)
    }
}

/// Value and top set of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTop {
    pub weight: String,
    pub value: String,
    pub top: Vec<(u32, u32)>,
}

/// Support, hull vertices (counter-clockwise from the lowest-leftmost point) and tops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonData {
    pub points: Vec<(u32, u32)>,
    pub hull: Vec<(u32, u32)>,
    pub tops: Vec<WeightTop>,
}

fn cross(o: (u32, u32), a: (u32, u32), b: (u32, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Convex hull vertices by the monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut pts: Vec<(u32, u32)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(u32, u32)> = vec![];
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(u32, u32)> = vec![];
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn polygon_data<S: Scalar>(p: &WeylOp<S>, weights: &[Weight]) -> Result<PolygonData> {
    if p.is_zero() {
        return pre("polygon of zero");
    }
    let points: Vec<(u32, u32)> = p.terms().keys().copied().collect();
    let b = BivarPoly::from_weyl(p);
    let tops = weights
        .iter()
        .map(|w| WeightTop {
            weight: w.to_string(),
            value: b.weight_degree(w).unwrap().to_string(),
            top: b.top_part(w).terms().keys().copied().collect(),
        })
        .collect();
    Ok(PolygonData { hull: convex_hull(&points), points, tops })
}

impl fmt::Display for PolygonData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts = |v: &[(u32, u32)]| v.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ");
        writeln!(f, "points  {}", pts(&self.points))?;
        writeln!(f, "hull    {}", pts(&self.hull))?;
        for t in &self.tops {
            writeln!(f, "{:<12} v = {:<6} top {}", t.weight, t.value, pts(&t.top))?;
        }
        Ok(())
    }
}
