use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub(crate) BigRational);

impl Rat {
    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn big(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }

    /// `num/den`; errors when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Rat> {
        if den == 0 {
            return Err(Error::ZeroDivision);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::new(num, den).expect("nonzero denominator")
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Result<Rat> {
        if self.is_zero() {
            Err(Error::ZeroDivision)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    pub fn checked_div(&self, o: &Rat) -> Result<Rat> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Rat> {
        if e >= 0 {
            let mut acc = Rat::one();
            let mut base = self.clone();
            let mut e = e as u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = &acc * &base;
                }
                base = &base * &base;
                e >>= 1;
            }
            Ok(acc)
        } else {
            self.inv()?.pow(-e)
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact `n`-th root when it exists in Q.
    pub fn nth_root(&self, n: u32) -> Option<Rat> {
        if n == 0 {
            return None;
        }
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        if self.is_negative() && n % 2 == 0 {
            return None;
        }
        let root_int = |v: &BigInt| -> Option<BigInt> {
            let a = v.abs();
            let r = a.nth_root(n);
            if num_traits::pow(r.clone(), n as usize) == a {
                Some(if v.is_negative() { -r } else { r })
            } else {
                None
            }
        };
        let num = root_int(self.numer())?;
        let den = root_int(self.denom())?;
        Some(Rat(BigRational::new(num, den)))
    }

    pub fn binomial(n: i64, k: u32) -> Rat {
        // generalised binomial, valid for negative n
        let mut acc = Rat::one();
        for t in 0..k as i64 {
            acc = &acc * &Rat::frac(n - t, t + 1);
        }
        acc
    }

    pub fn factorial(n: u32) -> BigInt {
        let mut acc = BigInt::one();
        for t in 2..=n {
            acc *= t;
        }
        acc
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `a`, `-a`, `a/b` with decimal integers.
    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str, allow_sign: bool| -> Result<BigInt> {
            let body = t.strip_prefix('-').filter(|_| allow_sign).unwrap_or(t);
            if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
                return parse_err(0, format!("bad integer {t:?}"));
            }
            t.parse::<BigInt>()
                .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
        };
        let n = parse_int(num, true)?;
        let d = match den {
            Some(d) => parse_int(d, false)?,
            None => BigInt::one(),
        };
        Rat::from_big(n, d)
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
    };
}

bin_op!(Add, add);
bin_op!(Sub, sub);
bin_op!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on zero divisor; use `checked_div` for fallible division.
    fn div(self, o: &Rat) -> Rat {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, o: &Rat) {
        self.0 *= &o.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::big(n)
    }
}
