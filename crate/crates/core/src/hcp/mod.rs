//! Canonical forms for the operator ring generated by `x`, `d`, `int`, `delta` and
//! the dilations `A_i`, plus bracket solving against powers of `d`.

mod bracket;
mod form;
mod gens;
pub mod quasi;
mod text;

pub use bracket::{bracket_solve, bracket_solve_bounded, centralizer_basis, centralizer_constraints, invert_order0, is_central, qp_tail};
pub use form::{falling_poly, Hcp, Hcpc};
pub use gens::{act_word, from_word, parse_word, Gen, Poly};
pub(crate) use text::{comp_from_json, comp_to_json, CompJson};
