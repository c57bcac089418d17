//! Exact symbolic computation in the first Weyl algebra `A_1 = K[x][d]`
//! (`[d, x] = 1`) and in the operator ring generated by `x`, `d`, the
//! integration `int`, the evaluation `delta f = f(0)` and the dilations
//! `A_i f(x) = f(xi^i x)` acting on `K[[x]]`.
//!
//! Module map:
//! - [`exactnum`]: rationals, cyclotomic fields, truncated series.
//! - [`weyl`]: normally ordered operators, endomorphisms, series-coefficient operators.
//! - [`newton`]: supports, weight degrees, top parts, commutator weight laws.
//! - [`hcp`]: homogeneous canonical forms, their products and actions.
//! - [`normalform`]: graded operators, normalisation, Schur operators, normal forms.
//! - [`pipeline`]: polynomial ODE solver, recursion traces, twists, decompositions, the verification suite.

pub mod error;
pub mod exactnum;
pub mod hcp;
pub mod newton;
pub mod normalform;
pub mod pipeline;
pub mod weyl;

pub use error::{Error, Result};
