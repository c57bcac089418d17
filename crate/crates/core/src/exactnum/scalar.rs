use std::fmt::{Debug, Display};

use super::Rat;
use crate::error::Result;

/// Exact field element. Operations between elements of different fields
/// panic; widening is always explicit.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    /// Runtime description of the ambient field (unit for Q).
    type Field: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn field(&self) -> Self::Field;
    fn zero(f: &Self::Field) -> Self;
    fn one(f: &Self::Field) -> Self;
    fn from_rat(f: &Self::Field, r: &Rat) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_inv(&self) -> Result<Self>;

    /// The element as a rational, if it lies in Q.
    fn as_rat(&self) -> Option<Rat>;

    fn from_int(f: &Self::Field, n: i64) -> Self {
        Self::from_rat(f, &Rat::int(n))
    }

    fn scale(&self, r: &Rat) -> Self {
        self.times(&Self::from_rat(&self.field(), r))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    /// Text for use as a coefficient in a signed sum: `(negative, magnitude)`.
    fn signed_text(&self) -> (bool, String) {
        match self.as_rat() {
            Some(r) if r.is_negative() => (true, r.abs().to_string()),
            Some(r) => (false, r.to_string()),
            None => (false, self.to_string()),
        }
    }
}

impl Scalar for Rat {
    type Field = ();

    fn field(&self) {}
    fn zero(_: &()) -> Rat {
        Rat::zero()
    }
    fn one(_: &()) -> Rat {
        Rat::one()
    }
    fn from_rat(_: &(), r: &Rat) -> Rat {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn plus(&self, o: &Rat) -> Rat {
        self + o
    }
    fn minus(&self, o: &Rat) -> Rat {
        self - o
    }
    fn times(&self, o: &Rat) -> Rat {
        self * o
    }
    fn negate(&self) -> Rat {
        -self
    }
    fn try_inv(&self) -> Result<Rat> {
        self.inv()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn scale(&self, r: &Rat) -> Rat {
        self * r
    }
}
