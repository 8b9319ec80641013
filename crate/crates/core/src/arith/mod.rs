//! Exact arithmetic: rationals, Gaussian numbers, integer matrices with
//! Hermite and Smith normal forms, and congruence solving on real tori.
//!
//! Everything is arbitrary precision; there is no fixed-width arithmetic on
//! values that can grow.

mod congruence;
mod gaussian;
mod hnf;
mod matrix;
mod rational;
mod snf;
mod sparse;

pub use congruence::{solve_torus_congruence, CongruenceError, SolutionSet, MAX_ENUMERATED};
pub use gaussian::{gauss_norm, parse_gaussian, parse_gaussian_integer, GaussianInteger, GaussianRational};
pub use hnf::hermite_normal_form;
pub use matrix::IntMatrix;
pub use rational::{common_denominator, frac, int, is_integer, parse_rational, rat, Lit, LiteralError, Rational};
pub use snf::{smith_invariants, smith_normal_form, SnfResult};
pub use sparse::{sparse_invariants, sparse_rows_of, SparseRow, SparseSnf};
