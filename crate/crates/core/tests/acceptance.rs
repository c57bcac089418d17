//! One line per acceptance criterion; exits nonzero if any fails or runs over its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use weyl_core::exactnum::{Rat, UniPoly};
use weyl_core::pipeline::identities::{identity_holds, identity_instances};
use weyl_core::pipeline::random::sub_seed;
use weyl_core::pipeline::*;

const SEED: u64 = 20_241_014;

type Outcome = weyl_core::Result<(usize, Option<String>)>;

fn identities() -> Outcome {
    let all = identity_instances(6, 6, 5);
    for (n, inst) in all.iter().enumerate() {
        if !identity_holds(inst, false)? {
            return Ok((n + 1, Some(format!("{inst:?}"))));
        }
    }
    if all.len() < 500 {
        return Ok((all.len(), Some(format!("only {} instances", all.len()))));
    }
    Ok((all.len(), None))
}

/// The induction-step shape: `g = (1 + alpha x)^l`, `A = (m-1)(n-1)`, `z = d(mn - m - n)`, `c = 1/d`,
/// with `n, m >= 2` (otherwise one order divides the other).
fn ode_shapes() -> Outcome {
    let mut count = 0;
    for d in 2..=5i64 {
        for n in 2..=5i64 {
            for m in 2..=5i64 {
                for l in 1..d {
                    for alpha in [1i64, -1, 2] {
                        let Ok(shape) = PairShape::new(d, n, m, l, Rat::int(alpha)) else {
                            continue;
                        };
                        count += 1;
                        let a = ((m - 1) * (n - 1)) as u32;
                        let z = d * (m * n - m - n);
                        let wit = || Some(format!("d={d} n={n} m={m} l={l} alpha={alpha}"));
                        let Some(sol) = poly_ode_solve(&shape.g(), a, d, z, &Rat::frac(1, d))? else {
                            return Ok((count, wit()));
                        };
                        let e = (l as u32) * a + 1 - l as u32;
                        let base = UniPoly::new(&(), vec![Rat::one(), Rat::int(alpha)]).pow(e);
                        let c = &sol.particular.coeff(0) / &base.coeff(0);
                        if sol.kernel.is_some() || sol.particular != base.scale(&c) || sol.particular.degree() != Some(e as usize) {
                            return Ok((count, wit()));
                        }
                    }
                }
            }
        }
    }
    Ok((count, None))
}

fn ode() -> Outcome {
    let (n1, w1) = ode_check(sub_seed(SEED, "ode"), 200, 10, false)?;
    if w1.is_some() {
        return Ok((n1, w1));
    }
    // multi-root refutation on explicit products of distinct linear factors
    let mut n2 = 0;
    for roots in [vec![0i64, 1], vec![-1, 2], vec![0, 1, 3], vec![1, 2, -3, 4]] {
        let mut g = UniPoly::constant(&(), Rat::one());
        for r in &roots {
            g = g.mul(&UniPoly::new(&(), vec![Rat::int(-r), Rat::one()]));
        }
        let l = roots.len() as i64;
        for d in 1..=6i64 {
            if l % d == 0 && l / d > 1 {
                continue;
            }
            for a in 0..=4u32 {
                n2 += 1;
                if poly_ode_solve(&g, a, d, (a as i64 - 1) * d, &Rat::one())?.is_some() {
                    return Ok((n1 + n2, Some(format!("roots {roots:?}, d={d}, A={a} solved"))));
                }
            }
        }
    }
    let (n3, w3) = ode_shapes()?;
    Ok((n1 + n2 + n3, w3))
}

fn decompose() -> Outcome {
    decompose_check(sub_seed(SEED, "decompose"), 100, 6, false)
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "identity suite", limit: Duration::from_secs(60), run: identities },
        Criterion { id: 2, name: "oracle equivalence", limit: Duration::from_secs(120), run: || oracle_check(sub_seed(SEED, "oracle"), 1000, false) },
        Criterion { id: 3, name: "qp tail", limit: Duration::from_secs(10), run: || qp_tail_check(false) },
        Criterion { id: 4, name: "schur fixture", limit: Duration::from_secs(30), run: || schur_check(false) },
        Criterion { id: 5, name: "centralizer", limit: Duration::from_secs(10), run: || centralizer_check(sub_seed(SEED, "centralizer"), false) },
        Criterion { id: 6, name: "dixmier laws", limit: Duration::from_secs(60), run: || dixmier_check(sub_seed(SEED, "dixmier"), 300, false) },
        Criterion { id: 7, name: "polynomial ode", limit: Duration::from_secs(60), run: ode },
        Criterion { id: 8, name: "condition A_q closure", limit: Duration::from_secs(60), run: || aq_check(sub_seed(SEED, "aq"), 30, false) },
        Criterion { id: 9, name: "automorphism round trip", limit: Duration::from_secs(120), run: decompose },
        Criterion { id: 10, name: "twist arithmetic", limit: Duration::from_secs(30), run: || twist_check(sub_seed(SEED, "twist"), 50, false) },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let res = (c.run)();
        let el = t.elapsed();
        let (n, why) = match res {
            Ok((n, w)) => (n, w),
            Err(e) => (0, Some(format!("error: {e}"))),
        };
        let why = why.or_else(|| (el > c.limit).then(|| format!("took {el:.2?}, limit {:?}", c.limit)));
        let verdict = if why.is_none() { "PASS" } else { "FAIL" };
        if why.is_some() {
            failed += 1;
        }
        println!("{verdict} criterion {:>2} {:<24} n={n:<6} {:>10.3?}{}", c.id, c.name, el, why.map_or(String::new(), |w| format!("  {w}")));
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
