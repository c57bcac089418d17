//! Drivers: the polynomial ODE of the induction step, the order-reducing recursion,
//! twisted top lines, decomposition of automorphisms into tame generators, and the
//! verification suite.

mod decompose;
pub mod identities;
mod ode;
pub mod random;
mod recursion;
mod suite;
mod twist;

pub use decompose::{decompose_automorphism, DecomposeFailure, DEFAULT_MAX_STEPS};
pub use ode::{ode_lhs, ode_report, poly_ode_solve, poly_ode_solve_dense, OdeReport, OdeSolution};
pub use recursion::{eval_bivar, fi_recursion, PairShape, RecursionStep, RecursionTrace, StopReason, RECURSION_SIZE_CAP};
pub use suite::{
    aq_check, centralizer_check, decompose_check, dixmier_check, lemma_suite, ode_check, oracle_check, qp_tail_check, schur_check, synthetic_pair,
    twist_check, CheckRecord, SuiteBounds, Verdict, VerificationReport,
};
pub use twist::{twist_pair, twisted_axis_coeff, twisted_top, TwistReport, TwistedTop};
