use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Hcp, Hcpc};
use crate::error::{parse_err, Error, Result};
use crate::exactnum::{parse_poly, poly_text, CycElem, CycField, Lexer, Rat};

fn coeff_text(c: &CycElem) -> (bool, String) {
    match c.as_rat() {
        Some(r) => (r.is_negative(), r.abs().to_string()),
        None => (false, format!("({})", poly_text(c.coeffs(), "z"))),
    }
}

fn push_term(out: &mut String, c: &CycElem, atom: &str) {
    let (neg, mag) = coeff_text(c);
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mag != "1" {
        out.push_str(&mag);
        out.push('*');
    }
    out.push_str(atom);
}

fn x_atom(l: u32, i: u32, r: i64) -> String {
    match l {
        0 => format!("A_{i}*D^{r}"),
        1 => format!("x*A_{i}*d*D^{r}"),
        _ => format!("x^{l}*A_{i}*d^{l}*D^{r}"),
    }
}

impl Hcpc {
    /// Canonical text: components by decreasing order, then `(l, i)`, then `B_j`;
    /// suffix ` @k`. Coefficients outside Q are written as polynomials in `z = xi_k`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in self.components().values().rev() {
            for (&(l, i), c) in h.xa() {
                push_term(&mut out, c, &x_atom(l, i, h.order()));
            }
            for (&j, c) in h.b() {
                push_term(&mut out, c, &format!("B_{j}*D^{}", h.order()));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} @{}", self.modulus())
    }

    pub fn parse(s: &str) -> Result<Hcpc> {
        let Some(at) = s.rfind('@') else {
            return parse_err(0, "missing @k suffix");
        };
        let k: u32 = s[at + 1..]
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: at + 1, msg: "bad modulus".into() })?;
        if k == 0 || k > 720 {
            return parse_err(at + 1, "modulus out of range 1..=720");
        }
        let field = CycField::new(k)?;
        let mut lx = Lexer::new(&s[..at]);
        let mut out = Hcpc::zero(&field);
        if lx.eat(b'0') && lx.at_end() {
            return Ok(out);
        }
        lx = Lexer::new(&s[..at]);
        let mut first = true;
        loop {
            if lx.at_end() {
                if first {
                    return parse_err(lx.pos, "empty sum");
                }
                break;
            }
            let mut neg = false;
            if lx.eat(b'-') {
                neg = true;
            } else if !first && !lx.eat(b'+') {
                return parse_err(lx.pos, "expected + or -");
            }
            first = false;
            let h = parse_term(&mut lx, &field)?;
            out.add_hcp(&if neg { h.neg() } else { h });
        }
        Ok(out)
    }
}

fn parse_term(lx: &mut Lexer<'_>, field: &Arc<CycField>) -> Result<Hcp> {
    let mut coef = CycElem::rat(field, Rat::one());
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            coef = CycElem::rat(field, lx.urat()?);
            lx.expect(b'*')?;
        }
        Some(b'(') => {
            lx.pos += 1;
            let poly = parse_poly(lx, b'z')?;
            lx.expect(b')')?;
            lx.expect(b'*')?;
            coef = CycElem::from_poly(field, &poly);
        }
        _ => {}
    }
    let k = field.conductor();
    let order_after = |lx: &mut Lexer<'_>| -> Result<i64> {
        lx.expect(b'*')?;
        lx.expect(b'D')?;
        lx.expect(b'^')?;
        let p = lx.pos;
        let r = lx.int()?;
        if r.abs() > 1 << 20 {
            return parse_err(p, "order out of range");
        }
        Ok(r)
    };
    let pow = |lx: &mut Lexer<'_>| -> Result<u32> {
        if lx.eat(b'^') {
            let p = lx.pos;
            let e = lx.uint()?;
            if e > 1 << 16 {
                return parse_err(p, "exponent out of range");
            }
            Ok(e)
        } else {
            Ok(1)
        }
    };
    match lx.peek() {
        Some(b'x') => {
            lx.pos += 1;
            let l = pow(lx)?;
            lx.expect(b'*')?;
            let i = parse_index(lx, b'A', k)?;
            lx.expect(b'*')?;
            lx.expect(b'd')?;
            let l2 = pow(lx)?;
            if l != l2 {
                return parse_err(lx.pos, "x and d exponents differ");
            }
            let r = order_after(lx)?;
            Ok(Hcp::atom_x(field, l, i, r, coef))
        }
        Some(b'A') => {
            let i = parse_index(lx, b'A', k)?;
            let r = order_after(lx)?;
            Ok(Hcp::atom_x(field, 0, i, r, coef))
        }
        Some(b'B') => {
            let p = lx.pos;
            let j = parse_index(lx, b'B', u32::MAX)?;
            let r = order_after(lx)?;
            if j == 0 || (r < 0 && j as i64 <= -r) {
                return parse_err(p, "B_j needs j >= 1 and j > -r");
            }
            Ok(Hcp::atom_b(field, j, r, coef))
        }
        _ => parse_err(lx.pos, "expected an atom"),
    }
}

fn parse_index(lx: &mut Lexer<'_>, letter: u8, bound: u32) -> Result<u32> {
    lx.expect(letter)?;
    lx.expect(b'_')?;
    let p = lx.pos;
    let i = lx.uint()?;
    if i >= bound {
        return parse_err(p, format!("index {i} out of range"));
    }
    Ok(i)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct XaJson {
    pub l: u32,
    pub i: u32,
    pub coeff: CycElem,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct BJson {
    pub j: u32,
    pub coeff: CycElem,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct CompJson {
    pub order: i64,
    pub xa: Vec<XaJson>,
    pub b: Vec<BJson>,
}

#[derive(Serialize, Deserialize)]
struct HcpcJson {
    modulus: u32,
    components: Vec<CompJson>,
}

pub(crate) fn comp_to_json(h: &Hcp) -> CompJson {
    CompJson {
        order: h.order(),
        xa: h.xa().iter().map(|(&(l, i), c)| XaJson { l, i, coeff: c.clone() }).collect(),
        b: h.b().iter().map(|(&j, c)| BJson { j, coeff: c.clone() }).collect(),
    }
}

pub(crate) fn comp_from_json(c: CompJson, field: &Arc<CycField>) -> Result<Hcp> {
    let k = field.conductor();
    for a in &c.xa {
        if a.coeff.conductor() != k {
            return Err(Error::FieldMismatch(a.coeff.conductor(), k));
        }
    }
    for b in &c.b {
        if b.coeff.conductor() != k {
            return Err(Error::FieldMismatch(b.coeff.conductor(), k));
        }
        if b.j == 0 || (c.order < 0 && b.j as i64 <= -c.order) {
            return parse_err(0, "B_j needs j >= 1 and j > -order");
        }
    }
    Hcp::new(field, c.order, c.xa.into_iter().map(|a| ((a.l, a.i), a.coeff)), c.b.into_iter().map(|b| (b.j, b.coeff)))
}

impl Hcpc {
    /// JSON mirror `{modulus, components: [{order, xa: [{l,i,coeff}], b: [{j,coeff}]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let v = HcpcJson {
            modulus: self.modulus(),
            components: self.components().values().rev().map(comp_to_json).collect(),
        };
        serde_json::to_value(v).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Hcpc> {
        let j: HcpcJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        if j.modulus == 0 || j.modulus > 720 {
            return parse_err(0, "modulus out of range 1..=720");
        }
        let field = CycField::new(j.modulus)?;
        let mut out = Hcpc::zero(&field);
        for c in j.components {
            out.add_hcp(&comp_from_json(c, &field)?);
        }
        Ok(out)
    }
}
