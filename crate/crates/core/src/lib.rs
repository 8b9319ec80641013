//! Exact verification toolkit for ball quotient compactifications built from
//! elliptic curve arrangements on abelian surfaces over the Gaussian
//! integers, together with the finitely presented group computations that
//! accompany them.

pub mod affine;
pub mod arith;
pub mod fixtures;
pub mod fpgroup;
pub mod ledger;
pub mod pipeline;
pub mod text;
pub mod torus;
