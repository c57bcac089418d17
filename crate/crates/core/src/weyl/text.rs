use serde::{Deserialize, Serialize};

use super::WeylOp;
use crate::error::{parse_err, Error, Result};
use crate::exactnum::{Lexer, Rat};

/// Total-degree ceiling for parsed expressions, to keep `(..)^n` from exploding.
pub const PARSE_DEGREE_CAP: i64 = 256;
const PARSE_TERM_CAP: usize = 20_000;

/// Parse an operator expression over Q.
///
/// Grammar: `expr = ['-'] term (('+'|'-') term)*`, `term = factor ('*' factor)*`,
/// `factor = atom ['^' n]`, `atom = rational | x | d | '(' expr ')'`.
/// Products are normal ordered, so `d*x` is `x*d + 1`.
pub fn parse_weyl(s: &str) -> Result<WeylOp<Rat>> {
    let mut lx = Lexer::new(s);
    let op = expr(&mut lx, 0)?;
    if !lx.at_end() {
        return parse_err(lx.pos, "trailing input");
    }
    Ok(op)
}

fn guard(lx: &Lexer<'_>, op: WeylOp<Rat>) -> Result<WeylOp<Rat>> {
    if op.total_degree().unwrap_or(0) > PARSE_DEGREE_CAP || op.len() > PARSE_TERM_CAP {
        return parse_err(lx.pos, "expression too large");
    }
    Ok(op)
}

fn expr(lx: &mut Lexer<'_>, depth: usize) -> Result<WeylOp<Rat>> {
    if depth > 64 {
        return parse_err(lx.pos, "nesting too deep");
    }
    let neg = lx.eat(b'-');
    let mut acc = term(lx, depth)?;
    if neg {
        acc = acc.neg();
    }
    loop {
        if lx.eat(b'+') {
            let t = term(lx, depth)?;
            acc = acc.add(&t);
        } else if lx.eat(b'-') {
            let t = term(lx, depth)?;
            acc = acc.sub(&t);
        } else {
            break;
        }
    }
    Ok(acc)
}

fn term(lx: &mut Lexer<'_>, depth: usize) -> Result<WeylOp<Rat>> {
    let mut acc = factor(lx, depth)?;
    while lx.eat(b'*') {
        let f = factor(lx, depth)?;
        if acc.total_degree().unwrap_or(0) + f.total_degree().unwrap_or(0) > PARSE_DEGREE_CAP {
            return parse_err(lx.pos, "expression too large");
        }
        acc = guard(lx, acc.mul(&f))?;
    }
    Ok(acc)
}

fn factor(lx: &mut Lexer<'_>, depth: usize) -> Result<WeylOp<Rat>> {
    let base = atom(lx, depth)?;
    if lx.eat(b'^') {
        let p = lx.pos;
        let e = lx.uint()?;
        let deg = base.total_degree().unwrap_or(0);
        if e as i64 > PARSE_DEGREE_CAP || deg.saturating_mul(e as i64) > PARSE_DEGREE_CAP {
            return parse_err(p, "power too large");
        }
        if base.len() == 1 {
            // monomial powers of a single generator stay cheap
            let (&(i, j), c) = base.terms().iter().next().unwrap();
            if i == 0 || j == 0 {
                let c = c.pow(e as i64)?;
                return Ok(WeylOp::monomial(&(), i * e, j * e, c));
            }
        }
        let mut acc = WeylOp::one(&());
        for _ in 0..e {
            acc = guard(lx, acc.mul(&base))?;
        }
        return Ok(acc);
    }
    Ok(base)
}

fn atom(lx: &mut Lexer<'_>, depth: usize) -> Result<WeylOp<Rat>> {
    match lx.peek() {
        Some(b'(') => {
            lx.pos += 1;
            let e = expr(lx, depth + 1)?;
            lx.expect(b')')?;
            Ok(e)
        }
        Some(b'x') => {
            lx.pos += 1;
            Ok(WeylOp::x(&()))
        }
        Some(b'd') => {
            lx.pos += 1;
            Ok(WeylOp::d(&()))
        }
        Some(c) if c.is_ascii_digit() => Ok(WeylOp::constant(&(), lx.urat()?)),
        _ => {
            if lx.eat_str("\u{2202}") {
                return Ok(WeylOp::d(&()));
            }
            parse_err(lx.pos, "expected x, d, a number or '('")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    coeff: Rat,
}

/// JSON mirror: list of `{i, j, coeff}` in lexicographic `(i, j)` order.
pub fn weyl_to_json(op: &WeylOp<Rat>) -> serde_json::Value {
    let v: Vec<TermJson> = op.terms().iter().map(|(&(i, j), c)| TermJson { i, j, coeff: c.clone() }).collect();
    serde_json::to_value(v).expect("serialisable")
}

pub fn weyl_from_json(v: &serde_json::Value) -> Result<WeylOp<Rat>> {
    let ts: Vec<TermJson> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
    let mut prev: Option<(u32, u32)> = None;
    for t in &ts {
        if prev.is_some_and(|p| p >= (t.i, t.j)) {
            return parse_err(0, "terms must be strictly increasing in (i, j)");
        }
        if t.coeff.is_zero() {
            return parse_err(0, "zero coefficient");
        }
        prev = Some((t.i, t.j));
    }
    Ok(WeylOp::from_terms(&(), ts.into_iter().map(|t| (t.i, t.j, t.coeff))))
}

pub fn weyl_from_json_str(s: &str) -> Result<WeylOp<Rat>> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
    weyl_from_json(&v)
}
