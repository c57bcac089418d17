//! Exact scalars: rationals, cyclotomic fields, truncated power series.

mod cyclotomic;
pub mod linalg;
mod poly;
mod rat;
mod scalar;
mod series;

pub use cyclotomic::{cyclotomic_poly, CycElem, CycField};
pub(crate) use cyclotomic::{parse_poly, poly_text, Lexer};
pub use poly::UniPoly;
pub use rat::{gcd_i64, Rat};
pub use scalar::Scalar;
pub use series::TruncSeries;
