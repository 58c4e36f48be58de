//! Exact computation of generating functions for equivariant Euler
//! characteristics of graph complexes, with brute-force verification.
//!
//! The central object is the genus-`g` generating function `z_g`, a finite
//! Laurent polynomial in the inhomogeneous power sums `P_m = 1 + p_m` whose
//! power-sum coefficients encode, for every number of marked points `n` and
//! every partition of `n`, virtual multiplicities of symmetric-group
//! representations. The crate computes `z_g` two independent ways:
//!
//! * a closed formula summing explicit rational multiples of
//!   `P_m^{-k} prod P_{d_i}^{a_i}` over an arithmetically constrained index
//!   set ([`zagier`]), and
//! * a brute-force orbisum over isomorphism classes of stable graphs and
//!   their automorphisms ([`graphcore`]), with the intermediate orbigraph
//!   calculus ([`orbigraph`]) checked move by move.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all comparisons are equality, never tolerance.
//!
//! Conventions: Bernoulli numbers follow `t/(e^t - 1)`, so `B_1 = -1/2`;
//! series are truncated in the power-sum grading with `p_i` in degree `i`;
//! partitions sort by degree then reverse-lexicographically.

pub mod arith;
pub mod error;
pub mod graphcore;
pub mod json;
pub mod orbigraph;
pub mod symfunc;
pub mod zagier;

pub use arith::{Partition, Rational};
pub use error::{Error, Result};
pub use symfunc::{PSeries, SchurTable};
