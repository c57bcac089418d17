use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::identities::{identity_holds, identity_instances};
use super::{decompose_automorphism, fi_recursion, poly_ode_solve, poly_ode_solve_dense, OdeSolution, random, twist_pair, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::exactnum::{CycElem, CycField, Rat, UniPoly};
use crate::hcp::{act_word, centralizer_basis, from_word, is_central, qp_tail, Hcp, Hcpc, Poly};
use crate::newton::check_dixmier;
use crate::normalform::{condition_aq, schur};
use crate::weyl::{word_to_endo, D1Op, WeylOp};

/// Sizes for [`lemma_suite`]. Text form: `k=4,idx=4,a=3,cases=40`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    pub k_max: u32,
    pub idx: i64,
    pub a_max: i64,
    /// randomized instances per randomized check
    pub cases: usize,
    /// check id whose expected values are perturbed (harness self-test)
    pub inject: Option<String>,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds { k_max: 4, idx: 4, a_max: 3, cases: 30, inject: None }
    }
}

impl FromStr for SuiteBounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteBounds> {
        let mut b = SuiteBounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected key=value, got {part:?}") })?;
            let bad = || Error::Parse { pos: 0, msg: format!("bad value for {key}: {val:?}") };
            match key {
                "k" => b.k_max = val.parse().ok().filter(|&k| (1..=12).contains(&k)).ok_or_else(bad)?,
                "idx" => b.idx = val.parse().ok().filter(|&k| (1..=12).contains(&k)).ok_or_else(bad)?,
                "a" => b.a_max = val.parse().ok().filter(|&k| (0..=12).contains(&k)).ok_or_else(bad)?,
                "cases" => b.cases = val.parse().ok().filter(|&k| k <= 10_000).ok_or_else(bad)?,
                "inject" => b.inject = Some(val.to_string()),
                _ => return Err(Error::Parse { pos: 0, msg: format!("unknown bound {key:?}") }),
            }
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: String,
    pub seed: u64,
    pub instances: usize,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub bounds: SuiteBounds,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.id.as_str()).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for c in &self.checks {
            let v = if c.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
            write!(f, "{v} {:<14} n={:<5} {}", c.id, c.instances, c.params)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of one check: instances run and the first failure.
type Outcome = Result<(usize, Option<String>)>;

struct Check {
    id: String,
    params: String,
    run: Box<dyn Fn(u64, bool) -> Outcome + Send + Sync>,
}

fn check(id: &str, params: String, run: impl Fn(u64, bool) -> Outcome + Send + Sync + 'static) -> Check {
    Check { id: id.to_string(), params, run: Box::new(run) }
}

/// Runs every check concurrently; the report is ordered by check id.
pub fn lemma_suite(seed: u64, bounds: &SuiteBounds) -> VerificationReport {
    let b = bounds.clone();
    let mut checks = vec![];
    for id in 1..=9u8 {
        let (k, idx, a) = (b.k_max, b.idx, b.a_max);
        checks.push(check(&format!("identity.{id}"), format!("k<={k} idx<={idx} a<={a}"), move |_, corrupt| {
            let mut n = 0;
            for inst in identity_instances(k, idx, a).into_iter().filter(|i| i.id == id) {
                n += 1;
                if !identity_holds(&inst, corrupt)? {
                    return Ok((n, Some(format!("k={} a={} b={}", inst.k, inst.a, inst.b))));
                }
            }
            Ok((n, None))
        }));
    }
    let cases = b.cases;
    checks.push(check("oracle", format!("words<=8 k<=4 m<=12 cases={cases}"), move |s, corrupt| oracle_check(s, cases, corrupt)));
    checks.push(check("qp_tail", "p=2..5".into(), |_, corrupt| qp_tail_check(corrupt)));
    checks.push(check("schur", "d^2 - x, depth 8".into(), |_, corrupt| schur_check(corrupt)));
    checks.push(check("centralizer", "k=2..4".into(), |s, corrupt| centralizer_check(s, corrupt)));
    checks.push(check("dixmier", format!("cases={cases}"), move |s, corrupt| dixmier_check(s, cases, corrupt)));
    checks.push(check("ode", format!("deg g<=6 cases={cases}"), move |s, corrupt| ode_check(s, cases, 6, corrupt)));
    checks.push(check("aq_product", format!("q=2,3 cases={}", cases.min(10)), move |s, corrupt| aq_check(s, cases.min(10), corrupt)));
    checks.push(check("decompose", format!("words<=4 cases={cases}"), move |s, corrupt| decompose_check(s, cases, 4, corrupt)));
    checks.push(check("twist", format!("cases={}", cases.min(10)), move |s, corrupt| twist_check(s, cases.min(10), corrupt)));

    let inject = b.inject.clone();
    let mut records: Vec<CheckRecord> = checks
        .par_iter()
        .map(|c| {
            let s = random::sub_seed(seed, &c.id);
            let corrupt = inject.as_deref() == Some(c.id.as_str());
            let (instances, witness) = match (c.run)(s, corrupt) {
                Ok(r) => r,
                Err(e) => (0, Some(format!("error: {e}"))),
            };
            CheckRecord {
                id: c.id.clone(),
                params: c.params.clone(),
                seed: s,
                instances,
                verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
                witness,
            }
        })
        .collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport { seed, bounds: b, checks: records }
}

fn poly_add(mut a: Poly, extra: &CycElem, deg: u32) -> Poly {
    let e = a.entry(deg).or_insert_with(|| CycElem::zero(extra.ring()));
    *e = e.add(extra);
    if e.is_zero() {
        a.remove(&deg);
    }
    a
}

pub fn oracle_check(seed: u64, cases: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    for n in 0..cases {
        let k = r.gen_range(1..=4);
        let f = CycField::new(k)?;
        let w = random::gen_word(&mut r, &f, 8);
        let h = from_word(&w, &f)?;
        for m in 0..=12u32 {
            let mono: Poly = [(m, CycElem::rat(&f, Rat::one()))].into_iter().collect();
            let mut want = act_word(&w, &mono, &f);
            if corrupt {
                want = poly_add(want, &CycElem::rat(&f, Rat::one()), 0);
            }
            if h.act_monomial(m) != want {
                let words: Vec<String> = w.iter().map(|g| g.to_string()).collect();
                return Ok((n + 1, Some(format!("k={k} word=[{}] m={m}", words.join(" ")))));
            }
        }
    }
    Ok((cases, None))
}

pub fn qp_tail_check(corrupt: bool) -> Outcome {
    for p in 2..=5u32 {
        let t = qp_tail(p)?.to_hcpc();
        let f = t.field().clone();
        let dp = Hcp::shift_op(&f, p as i64).to_hcpc();
        let mut want = Hcpc::one(&f);
        if corrupt {
            want = want.scale(&CycElem::rat(&f, Rat::int(2)));
        }
        if t.commutator(&dp)? != want {
            return Ok((p as usize - 1, Some(format!("p={p}"))));
        }
    }
    Ok((4, None))
}

/// `S P = d^2 S`, the `Sdeg_A` window and `B`-freeness of every `S_{-t}`, and the
/// shape of `S^{-1}` (same window, `B`-free, `(S^{-1})_0 = 1`, `(S^{-1})_{-1} = 0`).
pub fn schur_check(corrupt: bool) -> Outcome {
    let depth = 8;
    let p = D1Op::from_weyl(&crate::weyl::parse_weyl("d^2 - x")?, 2 * depth + 4);
    let sd = schur(&p, depth)?;
    let f = sd.s.field().clone();
    let dp = crate::normalform::GradedOp::from_hcpc(&Hcp::shift_op(&f, 2).to_hcpc(), 2, depth);
    let lhs = sd.s.mul(&sd.pnorm)?;
    let mut rhs = dp.mul(&sd.s)?;
    if corrupt {
        rhs = rhs.add(&dp)?;
    }
    if !lhs.sub(&rhs)?.is_zero() {
        return Ok((1, Some("S P != d^2 S".into())));
    }
    for (name, g) in [("S", &sd.s), ("S^-1", &sd.s_inv)] {
        if g.component(0)? != Hcp::shift_op(&f, 0) || !g.component(-1)?.is_zero() {
            return Ok((1, Some(format!("{name}: components 0, -1"))));
        }
        for t in 2..depth as i64 {
            let c = g.component(-t)?;
            if c.is_zero() {
                continue;
            }
            let s = c.sdeg_a().unwrap_or(0) as i64;
            // t/2 - 1 < s < t
            if 2 * s <= t - 2 || s >= t || !c.is_totally_free_b() {
                return Ok((1, Some(format!("{name}_{{-{t}}}: Sdeg_A = {s}"))));
            }
        }
    }
    let prod = sd.s.mul(&sd.s_inv)?;
    if prod.to_hcpc() != Hcpc::one(&f) {
        return Ok((1, Some("S S^-1 != 1".into())));
    }
    Ok((1, None))
}

pub fn centralizer_check(seed: u64, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    let mut n = 0;
    for k in 2..=4u32 {
        let f = CycField::new(k)?;
        let basis = centralizer_basis(k, -(k as i64) + 1, 2)?;
        for h in &basis {
            n += 1;
            let mut hh = h.to_hcpc();
            if corrupt {
                hh = hh.add(&Hcp::atom_x(&f, 1, 0, h.order(), CycElem::rat(&f, Rat::one())).to_hcpc())?;
            }
            if !is_central(&hh, k)? {
                return Ok((n, Some(format!("k={k} basis element of order {}", h.order()))));
            }
        }
        // dimension count: order l >= 0 gives k (one A_i D^l each); order -u gives k - rank
        for l in -(k as i64) + 1..=2 {
            let got = basis.iter().filter(|h| h.order() == l).count();
            let want = if l >= 0 {
                k as usize
            } else {
                let rows = crate::hcp::centralizer_constraints(&f, (-l) as u32);
                k as usize - crate::exactnum::linalg::rank(&rows)
            };
            if got != want {
                return Ok((n, Some(format!("k={k} order {l}: {got} basis elements, expected {want}"))));
            }
        }
        // a random element with an x d atom does not commute
        n += 1;
        let c = CycElem::rat(&f, random::small_rat(&mut r, true));
        let h = Hcp::atom_x(&f, 1, r.gen_range(0..k), r.gen_range(-1..=2), c).to_hcpc();
        if is_central(&h, k)? {
            return Ok((n, Some(format!("k={k}: non-central element accepted"))));
        }
    }
    Ok((n, None))
}

pub fn dixmier_check(seed: u64, cases: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    for n in 0..cases {
        let (p, q) = random::dixmier_pair(&mut r);
        let w = random::weight(&mut r);
        let rep = check_dixmier(&p, &q, &w)?;
        let mut ok = rep.all_ok();
        if corrupt {
            // f_w(PQ) against twice the product of the tops
            let two = crate::newton::top_part(&p, &w).mul(&crate::newton::top_part(&q, &w)).scale(&Rat::int(2));
            ok &= crate::newton::top_part(&p.mul(&q), &w) == two;
        }
        if !ok {
            return Ok((n + 1, Some(format!("P = {p}, Q = {q}, weight {w}: {rep:?}"))));
        }
    }
    Ok((cases, None))
}

/// Fast solver vs dense solve; multi-root refutation when `l/d` is not an integer `> 1`.
pub fn ode_check(seed: u64, cases: usize, max_deg: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    for n in 0..cases {
        let g = random::poly(&mut r, max_deg);
        let a = r.gen_range(0..=3u32);
        let d = r.gen_range(1..=4i64);
        let z = (a as i64 - 1) * d;
        let c = random::small_rat(&mut r, true);
        let fast = poly_ode_solve(&g, a, d, z, &c)?;
        let mut dense = poly_ode_solve_dense(&g, a, d, z, &c)?;
        if corrupt {
            // a term of degree above any solution, or a solution where there is none
            let top = dense.as_ref().map_or(0, |s| {
                s.particular.degree().unwrap_or(0).max(s.kernel.as_ref().and_then(|k| k.degree()).unwrap_or(0)) + 1
            });
            let mut bump = vec![Rat::zero(); top + 1];
            bump[top] = Rat::one();
            let bump = UniPoly::new(&(), bump);
            dense = Some(match dense {
                Some(s) => OdeSolution { particular: s.particular.add(&bump), kernel: s.kernel },
                None => OdeSolution { particular: bump, kernel: None },
            });
        }
        let agree = match (&fast, &dense) {
            (None, None) => true,
            (Some(x), Some(y)) => x.same_set(y),
            _ => false,
        };
        let wit = |why: &str| Some(format!("{why}: g = {}, A = {a}, d = {d}, c = {c}", g.text("x")));
        if !agree {
            return Ok((n + 1, wit("fast and dense solutions differ")));
        }
        let l = g.degree().unwrap() as i64;
        let several_roots_allowed = l % d == 0 && l / d > 1;
        if g.distinct_roots() > 1 && !several_roots_allowed && fast.is_some() {
            return Ok((n + 1, wit("multi-root instance solved")));
        }
    }
    Ok((cases, None))
}

pub fn aq_check(seed: u64, cases: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    let depth = 6;
    for n in 0..cases {
        let q = r.gen_range(2..=3);
        let (k1, k2) = (r.gen_range(0..=2), r.gen_range(0..=2));
        let (oa, ob) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let a = random::aq_element(&mut r, q, k1, oa, depth);
        let b = random::aq_element(&mut r, q, k2, ob, depth);
        let want = if corrupt { k1 + k2 + 1 } else { k1 + k2 };
        if let Err(w) = condition_aq(&a.mul(&b)?, q, want) {
            return Ok((n + 1, Some(format!("q={q} k1={k1} k2={k2}: {w:?}"))));
        }
    }
    // conjugation by the Schur operator of d^2 - x
    let sd = schur(&D1Op::from_weyl(&crate::weyl::parse_weyl("d^2 - x")?, 20), 8)?;
    for n in 0..cases {
        let ox = r.gen_range(0..=3);
        let x = random::aq_element(&mut r, 2, 0, ox, 8);
        let conj = sd.s_inv.mul(&x)?.mul(&sd.s)?;
        let k = if corrupt { 1 } else { 0 };
        if let Err(w) = condition_aq(&conj, 2, k) {
            return Ok((cases + n + 1, Some(format!("S^-1 X S: {w:?}"))));
        }
    }
    Ok((2 * cases, None))
}

/// Round trip through [`decompose_automorphism`], then the recursion on the same pair.
pub fn decompose_check(seed: u64, cases: usize, max_len: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    let mut n = 0;
    while n < cases {
        let w = random::tame_word(&mut r, max_len);
        let e = word_to_endo(&w);
        if e.img_x.total_degree().unwrap_or(0) + e.img_d.total_degree().unwrap_or(0) > 40 {
            continue;
        }
        n += 1;
        let wit = |why: String| {
            let ws: Vec<String> = w.iter().map(|g| g.to_string()).collect();
            Some(format!("word [{}]: {why}", ws.join(" ")))
        };
        let rec = match decompose_automorphism(&e.img_x, &e.img_d, DEFAULT_MAX_STEPS) {
            Ok(v) => v,
            Err(c) => return Ok((n, wit(format!("stuck: {}", c.reason)))),
        };
        let mut back = word_to_endo(&rec);
        if corrupt {
            back.img_x = back.img_x.add(&WeylOp::one(&()));
        }
        if back.img_x != e.img_x || back.img_d != e.img_d {
            return Ok((n, wit("recomposed images differ".into())));
        }
        if e.img_x.ord().unwrap_or(0) >= 1 {
            let t = fi_recursion(&e.img_x, &e.img_d, 16, None)?;
            if !t.steps_cancel() {
                return Ok((n, wit("recursion step without cancellation".into())));
            }
            if matches!(t.stop, super::StopReason::StepCap | super::StopReason::SizeCap) {
                return Ok((n, wit(format!("recursion did not terminate: {:?}", t.stop))));
            }
        }
    }
    Ok((cases, None))
}

/// Synthetic subrectangular pairs: `x^{ln} d^{dn}`, `x^{lm} d^{dm}` plus terms inside the rectangles.
pub fn synthetic_pair(r: &mut impl Rng) -> (WeylOp<Rat>, WeylOp<Rat>, u32) {
    use num_integer::Integer;
    loop {
        let d = r.gen_range(2..=3u32);
        let l = r.gen_range(1..d);
        let n = r.gen_range(1..=2u32);
        let m = r.gen_range(1..=3u32);
        // the substitution grows like (d m)^2; keep it small
        if n.gcd(&m) != 1 || d * n.max(m) > 4 {
            continue;
        }
        fn mk(r: &mut impl Rng, a: u32, b: u32) -> WeylOp<Rat> {
            let mut p = WeylOp::monomial(&(), a, b, random::small_rat(r, true));
            for _ in 0..2 {
                p.add_term(r.gen_range(0..=a), r.gen_range(0..=b), &random::small_rat(r, true));
            }
            p
        }
        let p = mk(r, l * n, d * n);
        let q = mk(r, l * m, d * m);
        // an added term may cancel the corner
        if crate::newton::hm(&p) != Some((l * n, d * n)) || crate::newton::hm(&q) != Some((l * m, d * m)) {
            continue;
        }
        // N > eps = n / m
        let big_n = n / m + 1;
        return (p, q, big_n);
    }
}

pub fn twist_check(seed: u64, cases: usize, corrupt: bool) -> Outcome {
    let mut r = random::rng(seed);
    for n in 0..cases {
        let (p, q, big_n) = synthetic_pair(&mut r);
        let lambda = random::small_rat(&mut r, true);
        let mut rep = twist_pair(&p, &q, big_n, &lambda)?;
        if corrupt {
            rep.predicted_p += 1;
        }
        if !rep.holds() {
            return Ok((n + 1, Some(format!("P = {p}, Q = {q}, N = {big_n}, lambda = {lambda}: {rep:?}"))));
        }
    }
    Ok((cases, None))
}
