use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Hcp, Hcpc};
use crate::error::{parse_err, Result};
use crate::exactnum::{CycElem, CycField, Rat};

/// Generators of the operator ring acting on `K[[x]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Gen {
    X,
    D,
    Int,
    Delta,
    A(u32),
    Scalar(CycElem),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X => write!(f, "x"),
            Gen::D => write!(f, "d"),
            Gen::Int => write!(f, "int"),
            Gen::Delta => write!(f, "delta"),
            Gen::A(i) => write!(f, "A_{i}"),
            // one token: a bare rational, or the cyclotomic form without spaces
            Gen::Scalar(c) => match c.as_rat() {
                Some(r) => write!(f, "{r}"),
                None => write!(f, "{}", c.to_string().replace(' ', "")),
            },
        }
    }
}

/// Polynomial in `x` as `degree -> coefficient`.
pub type Poly = BTreeMap<u32, CycElem>;

impl Gen {
    /// The generator as a canonical form over modulus `k`.
    pub fn to_hcpc(&self, field: &Arc<CycField>) -> Hcpc {
        let one = CycElem::rat(field, Rat::one());
        let h = match self {
            Gen::X => Hcp::atom_x(field, 1, 0, -1, one),
            Gen::D => Hcp::atom_x(field, 0, 0, 1, one),
            Gen::Int => Hcp::atom_x(field, 0, 0, -1, one),
            Gen::Delta => Hcp::atom_b(field, 1, 0, one),
            Gen::A(i) => Hcp::atom_x(field, 0, *i % field.conductor(), 0, one),
            Gen::Scalar(c) => Hcp::atom_x(field, 0, 0, 0, c.clone()),
        };
        h.to_hcpc()
    }

    /// Defining action on polynomials, independent of the canonical-form calculus.
    pub fn act(&self, f: &Poly, field: &Arc<CycField>) -> Poly {
        let mut out = Poly::new();
        let mut put = |deg: u32, c: CycElem| {
            if !c.is_zero() {
                let e = out.entry(deg).or_insert_with(|| CycElem::zero(field));
                *e = e.add(&c);
                if e.is_zero() {
                    out.remove(&deg);
                }
            }
        };
        for (&m, a) in f {
            match self {
                Gen::X => put(m + 1, a.clone()),
                Gen::D => {
                    if m > 0 {
                        put(m - 1, a.scale(&Rat::int(m as i64)));
                    }
                }
                Gen::Int => put(m + 1, a.scale(&Rat::frac(1, m as i64 + 1))),
                Gen::Delta => {
                    if m == 0 {
                        put(0, a.clone());
                    }
                }
                Gen::A(i) => put(m, a.mul(&CycElem::xi_pow(field, *i as i64 * m as i64))),
                Gen::Scalar(c) => put(m, a.mul(c)),
            }
        }
        out
    }
}

/// Product `w[0] w[1] ... ` in canonical form.
pub fn from_word(word: &[Gen], field: &Arc<CycField>) -> Result<Hcpc> {
    let mut acc = Hcpc::one(field);
    for g in word {
        acc = acc.mul(&g.to_hcpc(field))?;
    }
    Ok(acc)
}

/// Action of the word on `f`: the rightmost generator acts first.
pub fn act_word(word: &[Gen], f: &Poly, field: &Arc<CycField>) -> Poly {
    let mut cur = f.clone();
    for g in word.iter().rev() {
        cur = g.act(&cur, field);
    }
    cur
}

/// Parse a space-separated word: `x d int delta A_i`, rational scalars and `(..)@k` scalars.
pub fn parse_word(s: &str, field: &Arc<CycField>) -> Result<Vec<Gen>> {
    let mut out = vec![];
    for tok in s.split_whitespace() {
        let g = match tok {
            "x" => Gen::X,
            "d" | "\u{2202}" => Gen::D,
            "int" | "\u{222b}" => Gen::Int,
            "delta" | "\u{3b4}" => Gen::Delta,
            t if t.starts_with("A_") => match t[2..].parse::<u32>() {
                Ok(i) => Gen::A(i % field.conductor()),
                Err(_) => return parse_err(0, format!("bad dilation index in {t:?}")),
            },
            t if t.starts_with('(') => {
                let c = CycElem::parse(t)?;
                if c.conductor() != field.conductor() {
                    return parse_err(0, format!("scalar {t:?} is not over conductor {}", field.conductor()));
                }
                Gen::Scalar(c)
            }
            t => {
                let r: Rat = t.parse()?;
                Gen::Scalar(CycElem::rat(field, r))
            }
        };
        out.push(g);
    }
    Ok(out)
}
