//! Exact counting tools for holomorphic cusp forms and the GL(4) objects
//! built from them.
//!
//! The crate computes, in exact integer/rational arithmetic:
//!
//! - dimensions of `S_k(Gamma1(N))` and of its new subspace, by two
//!   independent published formulas ([`dims`]),
//! - class numbers of imaginary quadratic fields and the resulting upper
//!   bounds on dihedral (CM) eigenform counts at prime-power level
//!   ([`quadratic`]),
//! - the level/conductor dictionary for supercuspidal GL(2) representations
//!   and the conductor window of a Rankin-Selberg product ([`conductor`]),
//! - archimedean parameters of tensor-product and symmetric-cube lifts to
//!   GL(4), cuspidality rules, and the exterior-square certificate that the
//!   two kinds of lift never coincide up to twist ([`cohomology`]),
//! - a counting pipeline that combines the above into lower-bound witnesses
//!   for the number of tensor-product lifts at level `p^N` ([`estimator`]).
//!
//! The `cuspcount` binary exposes all of it on the command line; see the
//! repository README.

pub mod arith;
pub mod cache;
pub mod cohomology;
pub mod conductor;
pub mod dims;
pub mod estimator;
pub mod output;
pub mod quadratic;
