//! Linear congruences on the real torus `(R/Z)^n`.

use super::matrix::IntMatrix;
use super::rational::{frac, Rational};
use super::snf::smith_normal_form;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Solutions of `A x = b (mod Z^n)` with `x` in `(R/Z)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    /// Every solution, coordinates in `[0, 1)`, lexicographically sorted.
    Finite(Vec<Vec<Rational>>),
    NoSolution,
    /// A real family: one particular solution plus the dimension of the
    /// kernel of `A` over `R`.
    Positive {
        particular: Vec<Rational>,
        kernel_dim: usize,
    },
}

impl SolutionSet {
    pub fn count(&self) -> Option<usize> {
        match self {
            SolutionSet::Finite(v) => Some(v.len()),
            SolutionSet::NoSolution => Some(0),
            SolutionSet::Positive { .. } => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        !matches!(self, SolutionSet::NoSolution)
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("congruence matrix is {rows}x{cols} but the right-hand side has length {len}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("solution count {0} is too large to enumerate")]
    TooMany(BigInt),
}

/// Upper bound on explicitly enumerated solutions.
pub const MAX_ENUMERATED: usize = 1 << 22;

/// Solves `A x = b (mod Z^n)` for an integral `A` and rational `b`.
///
/// With `S = U A V` the Smith form, substituting `x = V y` turns the system
/// into `d_k y_k = (U b)_k (mod 1)`, which is enumerated directly. Rows of `S`
/// past the rank must have `(U b)_k` integral or there is no solution.
pub fn solve_torus_congruence(
    a: &IntMatrix,
    b: &[Rational],
) -> Result<SolutionSet, CongruenceError> {
    if b.len() != a.rows() {
        return Err(CongruenceError::Shape {
            rows: a.rows(),
            cols: a.cols(),
            len: b.len(),
        });
    }
    let n = a.cols();
    let snf = smith_normal_form(a);
    let u = &snf.left_transform;
    let v = &snf.right_transform;
    let ub: Vec<Rational> = (0..a.rows())
        .map(|i| {
            (0..a.rows()).fold(Rational::zero(), |acc, j| {
                acc + Rational::from_integer(u[(i, j)].clone()) * &b[j]
            })
        })
        .collect();
    if ub[snf.rank..].iter().any(|x| !x.is_integer()) {
        return Ok(SolutionSet::NoSolution);
    }
    let to_x = |y: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|i| {
                let s = (0..n).fold(Rational::zero(), |acc, j| {
                    acc + Rational::from_integer(v[(i, j)].clone()) * &y[j]
                });
                frac(&s)
            })
            .collect()
    };
    if snf.rank < n {
        let mut y = vec![Rational::zero(); n];
        for k in 0..snf.rank {
            y[k] = &ub[k] / Rational::from_integer(snf.invariants[k].clone());
        }
        return Ok(SolutionSet::Positive {
            particular: to_x(&y),
            kernel_dim: n - snf.rank,
        });
    }
    let total: BigInt = snf.invariants.iter().product();
    let count = total
        .to_usize()
        .filter(|&c| c <= MAX_ENUMERATED)
        .ok_or_else(|| CongruenceError::TooMany(total.clone()))?;
    let divisors: Vec<usize> = snf
        .invariants
        .iter()
        .map(|d| d.to_usize().expect("bounded by the product"))
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; n];
    loop {
        let y: Vec<Rational> = (0..n)
            .map(|k| {
                let d = Rational::from_integer(BigInt::from(divisors[k]));
                (&ub[k] + Rational::from_integer(BigInt::from(digits[k]))) / d
            })
            .collect();
        out.push(to_x(&y));
        // odometer over the residues k in 0..d
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                out.dedup();
                debug_assert_eq!(out.len(), count);
                return Ok(SolutionSet::Finite(out));
            }
            digits[k] += 1;
            if digits[k] < divisors[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
