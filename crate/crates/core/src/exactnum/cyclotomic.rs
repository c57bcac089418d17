use std::fmt;
use std::sync::Arc;

use super::{Rat, Scalar};
use crate::error::{parse_err, Error, Result};

/// Q(xi_k) presented as Q[z]/(Phi_k(z)), where `z` stands for `xi_k = exp(2 pi i/k)`.
#[derive(Clone)]
pub struct CycField {
    k: u32,
    /// Monic `Phi_k`, low degree first; length `deg + 1`.
    modulus: Vec<Rat>,
    /// `z^e mod Phi_k` for `e` in `0..k`.
    powers: Vec<Vec<Rat>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(xi_{})", self.k)
    }
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Quotient and remainder for `b` nonzero.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lc = b[db].inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = &r[r.len() - 1] * &lc;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[shift + i] -= &t;
        }
        q[shift] = c;
        r.pop();
        poly_trim(&mut r);
    }
    (q, r)
}

fn divisors(k: u32) -> Vec<u32> {
    (1..=k).filter(|d| k % d == 0).collect()
}

/// Integer coefficients of the `k`-th cyclotomic polynomial.
pub fn cyclotomic_poly(k: u32) -> Vec<Rat> {
    assert!(k >= 1);
    let mut num = vec![Rat::zero(); k as usize + 1];
    num[0] = Rat::int(-1);
    num[k as usize] = Rat::one();
    for d in divisors(k) {
        if d < k {
            let (q, r) = poly_divmod(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

impl CycField {
    pub fn new(k: u32) -> Result<Arc<CycField>> {
        if k == 0 {
            return Err(Error::Precondition("cyclotomic conductor must be >= 1".into()));
        }
        let modulus = cyclotomic_poly(k);
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(k as usize);
        let mut cur = vec![Rat::zero(); deg];
        cur[0] = Rat::one();
        for _ in 0..k {
            powers.push(cur.clone());
            // multiply by z and reduce
            let mut next = vec![Rat::zero(); deg + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let top = next[deg].clone();
            if !top.is_zero() {
                for i in 0..deg {
                    let t = &top * &modulus[i];
                    next[i] -= &t;
                }
            }
            next.truncate(deg);
            cur = next;
        }
        Ok(Arc::new(CycField { k, modulus, powers }))
    }

    pub fn conductor(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }
}

/// Element of Q(xi_k), reduced modulo `Phi_k`.
#[derive(Clone)]
pub struct CycElem {
    field: Arc<CycField>,
    /// Exactly `field.degree()` coefficients.
    coeffs: Vec<Rat>,
}

impl PartialEq for CycElem {
    fn eq(&self, o: &CycElem) -> bool {
        self.field.k == o.field.k && self.coeffs == o.coeffs
    }
}

impl Eq for CycElem {}

impl std::hash::Hash for CycElem {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.field.k.hash(h);
        self.coeffs.hash(h);
    }
}

impl CycElem {
    pub fn zero(f: &Arc<CycField>) -> CycElem {
        CycElem { field: f.clone(), coeffs: vec![Rat::zero(); f.degree()] }
    }

    pub fn rat(f: &Arc<CycField>, r: Rat) -> CycElem {
        let mut e = CycElem::zero(f);
        e.coeffs[0] = r;
        e
    }

    /// `xi_k^e` for any integer `e`.
    pub fn xi_pow(f: &Arc<CycField>, e: i64) -> CycElem {
        let k = f.k as i64;
        let idx = e.rem_euclid(k) as usize;
        CycElem { field: f.clone(), coeffs: f.powers[idx].clone() }
    }

    /// Reduce an arbitrary polynomial in `z` (low degree first).
    pub fn from_poly(f: &Arc<CycField>, poly: &[Rat]) -> CycElem {
        let mut e = CycElem::zero(f);
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[i % f.k as usize];
            for (j, pc) in p.iter().enumerate() {
                if !pc.is_zero() {
                    e.coeffs[j] += &(c * pc);
                }
            }
        }
        e
    }

    pub fn ring(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.k
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn check(&self, o: &CycElem) {
        assert!(
            self.field.k == o.field.k,
            "cyclotomic field mismatch: {} vs {}",
            self.field.k,
            o.field.k
        );
    }

    pub fn checked_field(&self, o: &CycElem) -> Result<()> {
        if self.field.k == o.field.k {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.k, o.field.k))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &CycElem) -> CycElem {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycElem { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &CycElem) -> CycElem {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycElem { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> CycElem {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rat) -> CycElem {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, o: &CycElem) -> CycElem {
        self.check(o);
        if self.field.degree() == 1 {
            return CycElem { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &o.coeffs[0]] };
        }
        let prod = poly_mul(&self.coeffs, &o.coeffs);
        CycElem::from_poly(&self.field, &prod)
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_k`.
    pub fn inv(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.field.degree() == 1 {
            return Ok(CycElem::rat(&self.field, self.coeffs[0].inv()?));
        }
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut t0: Vec<Rat> = vec![];
        let mut t1: Vec<Rat> = vec![Rat::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt = poly_mul(&q, &t1);
            let mut t2 = vec![Rat::zero(); t0.len().max(qt.len())];
            for (i, c) in t0.iter().enumerate() {
                t2[i] += c;
            }
            for (i, c) in qt.iter().enumerate() {
                t2[i] -= c;
            }
            poly_trim(&mut t2);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r1 is a nonzero constant since Phi_k is irreducible
        let c = r1[0].inv()?;
        let inv: Vec<Rat> = t1.iter().map(|t| t * &c).collect();
        Ok(CycElem::from_poly(&self.field, &inv))
    }

    /// Image under `Q(xi_a) -> Q(xi_b)`, `xi_a -> xi_b^(b/a)`.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<CycElem> {
        let a = self.field.k;
        let b = target.k;
        if b % a != 0 {
            return Err(Error::Precondition(format!("conductor {a} does not divide {b}")));
        }
        let r = (b / a) as i64;
        let mut out = CycElem::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&CycElem::xi_pow(target, i as i64 * r).scale(c));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CycElem {
    /// `(c0 + c1*z + ...)@k`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})@{}", poly_text(&self.coeffs, "z"), self.field.k)
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Signed sum text of a univariate polynomial; `0` when empty.
pub(crate) fn poly_text(coeffs: &[Rat], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) struct Lexer<'a> {
    pub s: &'a [u8],
    pub pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(s: &'a str) -> Lexer<'a> {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    pub fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            parse_err(self.pos, format!("expected {:?}", c as char))
        }
    }

    pub fn eat_str(&mut self, t: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn digits(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return parse_err(self.pos, "expected digits");
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    pub fn uint(&mut self) -> Result<u32> {
        let p = self.pos;
        self.digits()?.parse().map_err(|_| Error::Parse { pos: p, msg: "integer out of range".into() })
    }

    pub fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let p = self.pos;
        let v: i64 = self
            .digits()?
            .parse()
            .map_err(|_| Error::Parse { pos: p, msg: "integer out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    /// Unsigned rational `a` or `a/b`.
    pub fn urat(&mut self) -> Result<Rat> {
        let p = self.pos;
        let n = self.digits()?;
        let save = self.pos;
        if self.eat(b'/') {
            if let Ok(d) = self.digits() {
                return format!("{n}/{d}").parse().map_err(|e: Error| match e {
                    Error::ZeroDivision => Error::Parse { pos: p, msg: "zero denominator".into() },
                    e => e,
                });
            }
            self.pos = save;
        }
        n.parse()
    }
}

/// Parse a signed sum of terms `c`, `c*v^e`, `v^e`, `v` in one variable.
pub(crate) fn parse_poly(lx: &mut Lexer<'_>, var: u8) -> Result<Vec<Rat>> {
    let mut out: Vec<Rat> = vec![];
    let mut first = true;
    loop {
        let save = lx.pos;
        let mut neg = false;
        if lx.eat(b'-') {
            neg = true;
        } else if !first && !lx.eat(b'+') {
            break;
        }
        if !first && lx.eat(b'-') {
            neg = !neg;
        }
        let mut coef = Rat::one();
        let mut exp = 0usize;
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = lx.urat()?;
                if lx.eat(b'*') {
                    exp = parse_var_pow(lx, var)?;
                }
            }
            Some(c) if c == var => exp = parse_var_pow(lx, var)?,
            _ if !first => {
                // not a term of this sum, e.g. the `+ O(x^M)` tail
                lx.pos = save;
                break;
            }
            _ => return parse_err(lx.pos, "expected term"),
        }
        first = false;
        if exp > 4096 {
            return parse_err(lx.pos, "exponent too large");
        }
        if out.len() <= exp {
            out.resize(exp + 1, Rat::zero());
        }
        if neg {
            coef = -coef;
        }
        out[exp] += &coef;
    }
    Ok(out)
}

fn parse_var_pow(lx: &mut Lexer<'_>, var: u8) -> Result<usize> {
    lx.expect(var)?;
    if lx.eat(b'^') {
        Ok(lx.uint()? as usize)
    } else {
        Ok(1)
    }
}

impl CycElem {
    /// Parse `(c0 + c1*z + ...)@k`.
    pub fn parse(s: &str) -> Result<CycElem> {
        let mut lx = Lexer::new(s);
        let e = parse_cyc(&mut lx)?;
        if !lx.at_end() {
            return parse_err(lx.pos, "trailing input");
        }
        Ok(e)
    }
}

fn parse_cyc(lx: &mut Lexer<'_>) -> Result<CycElem> {
    lx.expect(b'(')?;
    let poly = parse_poly(lx, b'z')?;
    lx.expect(b')')?;
    lx.expect(b'@')?;
    let p = lx.pos;
    let k = lx.uint()?;
    if k == 0 || k > 720 {
        return parse_err(p, "conductor out of range 1..=720");
    }
    let f = CycField::new(k)?;
    Ok(CycElem::from_poly(&f, &poly))
}

impl std::str::FromStr for CycElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<CycElem> {
        CycElem::parse(s)
    }
}

impl serde::Serialize for CycElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<CycElem, D::Error> {
        let s = String::deserialize(d)?;
        CycElem::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Scalar for CycElem {
    type Field = Arc<CycField>;

    fn field(&self) -> Arc<CycField> {
        self.field.clone()
    }
    fn zero(f: &Arc<CycField>) -> CycElem {
        CycElem::zero(f)
    }
    fn one(f: &Arc<CycField>) -> CycElem {
        CycElem::rat(f, Rat::one())
    }
    fn from_rat(f: &Arc<CycField>, r: &Rat) -> CycElem {
        CycElem::rat(f, r.clone())
    }
    fn is_zero(&self) -> bool {
        CycElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.as_rat().is_some_and(|r| r.is_one())
    }
    fn plus(&self, o: &CycElem) -> CycElem {
        self.add(o)
    }
    fn minus(&self, o: &CycElem) -> CycElem {
        self.sub(o)
    }
    fn times(&self, o: &CycElem) -> CycElem {
        self.mul(o)
    }
    fn negate(&self) -> CycElem {
        self.neg()
    }
    fn try_inv(&self) -> Result<CycElem> {
        self.inv()
    }
    fn as_rat(&self) -> Option<Rat> {
        CycElem::as_rat(self)
    }
    fn scale(&self, r: &Rat) -> CycElem {
        CycElem::scale(self, r)
    }
}

// Fields are determined by their conductor.
impl PartialEq for CycField {
    fn eq(&self, o: &CycField) -> bool {
        self.k == o.k
    }
}

impl Eq for CycField {}
