use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeylOp;
use crate::error::{pre, Result};
use crate::exactnum::{Rat, Scalar};

/// Algebra endomorphism of `A_1` given by the images of `x` and `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo<S: Scalar> {
    pub img_x: WeylOp<S>,
    pub img_d: WeylOp<S>,
    /// Whether `[img_d, img_x] = 1` was checked.
    pub verified: bool,
}

impl<S: Scalar> Endo<S> {
    /// Checked constructor: requires `[img_d, img_x] = 1`.
    pub fn new(img_x: WeylOp<S>, img_d: WeylOp<S>) -> Result<Endo<S>> {
        let br = img_d.commutator(&img_x);
        if br != WeylOp::one(img_x.field()) {
            return pre(format!("[img_d, img_x] = {br}, expected 1"));
        }
        Ok(Endo { img_x, img_d, verified: true })
    }

    /// Used for synthetic data whose defining relation is not required.
    pub fn unverified(img_x: WeylOp<S>, img_d: WeylOp<S>) -> Endo<S> {
        Endo { img_x, img_d, verified: false }
    }

    pub fn identity(field: &S::Field) -> Endo<S> {
        Endo { img_x: WeylOp::x(field), img_d: WeylOp::d(field), verified: true }
    }

    pub fn is_identity(&self) -> bool {
        let f = self.img_x.field();
        self.img_x == WeylOp::x(f) && self.img_d == WeylOp::d(f)
    }

    /// `E(P)`: substitute `x -> img_x`, `d -> img_d` in normal order.
    pub fn apply(&self, p: &WeylOp<S>) -> WeylOp<S> {
        let f = p.field();
        let max_i = p.terms().keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = p.terms().keys().map(|k| k.1).max().unwrap_or(0);
        let mut xp = vec![WeylOp::one(f)];
        for _ in 0..max_i {
            let n = xp.last().unwrap().mul(&self.img_x);
            xp.push(n);
        }
        let mut dp = vec![WeylOp::one(f)];
        for _ in 0..max_j {
            let n = dp.last().unwrap().mul(&self.img_d);
            dp.push(n);
        }
        let mut acc = WeylOp::zero(f);
        // group by i so each x-power multiplies a combined d-polynomial once
        let mut by_i: std::collections::BTreeMap<u32, WeylOp<S>> = Default::default();
        for (&(i, j), c) in p.terms() {
            let e = by_i.entry(i).or_insert_with(|| WeylOp::zero(f));
            *e = e.add(&dp[j as usize].scale(c));
        }
        for (i, dpart) in by_i {
            acc = acc.add(&xp[i as usize].mul(&dpart));
        }
        acc
    }

    /// `(self o other)(t) = self(other(t))`.
    pub fn compose(&self, other: &Endo<S>) -> Endo<S> {
        Endo {
            img_x: self.apply(&other.img_x),
            img_d: self.apply(&other.img_d),
            verified: self.verified && other.verified,
        }
    }
}

/// Tame generators of `Aut(A_1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TameGen {
    /// `x -> x + lambda d^n`, `d -> d`
    Phi { n: u32, lambda: Rat },
    /// `d -> d + lambda x^n`, `x -> x`
    PhiPrime { n: u32, lambda: Rat },
    /// `d -> a d + b x`, `x -> c d + d_ x`, with `a d_ - b c = 1`
    Linear { a: Rat, b: Rat, c: Rat, d: Rat },
}

impl TameGen {
    pub fn linear(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<TameGen> {
        if &(&a * &d) - &(&b * &c) != Rat::one() {
            return pre("linear generator needs ad - bc = 1");
        }
        Ok(TameGen::Linear { a, b, c, d })
    }

    /// `x -> -d`, `d -> x`
    pub fn fourier() -> TameGen {
        TameGen::Linear { a: Rat::zero(), b: Rat::one(), c: Rat::int(-1), d: Rat::zero() }
    }

    pub fn to_endo(&self) -> Endo<Rat> {
        let f = &();
        match self {
            TameGen::Phi { n, lambda } => Endo {
                img_x: WeylOp::x(f).add(&WeylOp::monomial(f, 0, *n, lambda.clone())),
                img_d: WeylOp::d(f),
                verified: true,
            },
            TameGen::PhiPrime { n, lambda } => Endo {
                img_x: WeylOp::x(f),
                img_d: WeylOp::d(f).add(&WeylOp::monomial(f, *n, 0, lambda.clone())),
                verified: true,
            },
            TameGen::Linear { a, b, c, d } => Endo {
                img_x: WeylOp::from_terms(f, [(0, 1, c.clone()), (1, 0, d.clone())]),
                img_d: WeylOp::from_terms(f, [(0, 1, a.clone()), (1, 0, b.clone())]),
                verified: true,
            },
        }
    }

    pub fn inverse(&self) -> TameGen {
        match self {
            TameGen::Phi { n, lambda } => TameGen::Phi { n: *n, lambda: -lambda },
            TameGen::PhiPrime { n, lambda } => TameGen::PhiPrime { n: *n, lambda: -lambda },
            // (d, x) -> (a d + b x, c d + d_ x) has inverse matrix [[d_, -b], [-c, a]]
            TameGen::Linear { a, b, c, d } => TameGen::Linear { a: d.clone(), b: -b, c: -c, d: a.clone() },
        }
    }
}

impl fmt::Display for TameGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameGen::Phi { n, lambda } => write!(f, "Phi({n},{lambda})"),
            TameGen::PhiPrime { n, lambda } => write!(f, "PhiP({n},{lambda})"),
            TameGen::Linear { a, b, c, d } => write!(f, "Lin({a},{b},{c},{d})"),
        }
    }
}

/// Composite `w[0] o w[1] o ...`.
pub fn word_to_endo(word: &[TameGen]) -> Endo<Rat> {
    let mut acc = Endo::identity(&());
    for g in word {
        acc = acc.compose(&g.to_endo());
    }
    acc
}

/// Parse a word such as `Phi(2,1) PhiP(1,-1/2) Lin(0,1,-1,0)`.
pub fn parse_tame_word(s: &str) -> Result<Vec<TameGen>> {
    let mut out = vec![];
    for tok in s.split_whitespace() {
        let (name, rest) = tok.split_once('(').ok_or_else(|| crate::Error::Parse { pos: 0, msg: format!("bad generator {tok:?}") })?;
        let args = rest.strip_suffix(')').ok_or_else(|| crate::Error::Parse { pos: 0, msg: format!("missing ')' in {tok:?}") })?;
        let args: Vec<&str> = args.split(',').collect();
        let g = match (name, args.len()) {
            ("Phi", 2) | ("PhiP", 2) => {
                let n: u32 = args[0].trim().parse().map_err(|_| crate::Error::Parse { pos: 0, msg: "bad n".into() })?;
                let lambda: Rat = args[1].parse()?;
                if name == "Phi" {
                    TameGen::Phi { n, lambda }
                } else {
                    TameGen::PhiPrime { n, lambda }
                }
            }
            ("Lin", 4) => TameGen::linear(args[0].parse()?, args[1].parse()?, args[2].parse()?, args[3].parse()?)?,
            _ => return Err(crate::Error::Parse { pos: 0, msg: format!("unknown generator {tok:?}") }),
        };
        out.push(g);
    }
    Ok(out)
}
