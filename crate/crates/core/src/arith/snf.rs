//! Smith normal form over the integers.
//!
//! Row/column reduction pivoting on the entry of least absolute value, with
//! the unimodular transforms accumulated alongside. The divisibility chain is
//! enforced during elimination: once a pivot has cleared its row and column,
//! any remaining entry it does not divide has its row folded into the pivot
//! row, which forces a strictly smaller pivot on the next pass.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `left * A * right = diag(invariants, 0, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
}

impl SnfResult {
    /// The diagonal matrix with the same shape as the input.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left_transform.rows(), self.right_transform.rows());
        for (k, v) in self.invariants.iter().enumerate() {
            d[(k, k)] = v.clone();
        }
        d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut calc = SnfCalc::new(a.clone(), true);
    calc.run();
    let rank = calc.rank;
    let invariants = (0..rank).map(|k| calc.d[(k, k)].clone()).collect();
    SnfResult {
        invariants,
        rank,
        left_transform: calc.left.expect("transforms requested"),
        right_transform: calc.right.expect("transforms requested"),
    }
}

/// Invariant factors only; skips transform bookkeeping.
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let mut calc = SnfCalc::new(a.clone(), false);
    calc.run();
    (0..calc.rank).map(|k| calc.d[(k, k)].clone()).collect()
}

struct SnfCalc {
    d: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
    rank: usize,
}

impl SnfCalc {
    fn new(d: IntMatrix, transforms: bool) -> Self {
        let (m, n) = (d.rows(), d.cols());
        SnfCalc {
            d,
            left: transforms.then(|| IntMatrix::identity(m)),
            right: transforms.then(|| IntMatrix::identity(n)),
            rank: 0,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(dst, src, k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(dst, src, k);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = &self.d[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let unit = a == BigInt::from(1);
                    best = Some((i, j, a));
                    if unit {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.d.rows(), self.d.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.d[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..m {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.d[(i, t)].div_floor(&p);
                    self.add_row(i, t, &-q);
                    dirty |= !self.d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.d[(t, j)].div_floor(&p);
                    self.add_col(j, t, &-q);
                    dirty |= !self.d[(t, j)].is_zero();
                }
                if dirty {
                    continue;
                }
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.d[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.d.negate_row(t);
                if let Some(l) = &mut self.left {
                    l.negate_row(t);
                }
            }
            self.rank = t + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.left_transform.mul(a).mul(&r.right_transform), r.diagonal());
        assert!(r.left_transform.is_unimodular());
        assert!(r.right_transform.is_unimodular());
        for w in r.invariants.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(r.invariants.iter().all(|d| d > &BigInt::zero()));
        r
    }

    #[test]
    fn identity_has_unit_invariants() {
        assert_eq!(check(&IntMatrix::identity(2)).invariants, ints(&[1, 1]));
    }

    #[test]
    fn two_four_six_eight() {
        // gcd of entries is 2 and |det| = 8, so the factors are (2, 4).
        let r = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(r.invariants, ints(&[2, 4]));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = check(&IntMatrix::zeros(3, 3));
        assert!(r.invariants.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rectangular_and_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is (1, 6).
        assert_eq!(
            check(&IntMatrix::from_rows(&[[2, 0], [0, 3]])).invariants,
            ints(&[1, 6])
        );
        assert_eq!(
            check(&IntMatrix::from_rows(&[[2, 0, 0], [0, 2, 0], [3, 3, 0]])).invariants,
            ints(&[1, 2])
        );
        let r = check(&IntMatrix::from_rows(&[[0, 0, -4]]));
        assert_eq!(r.invariants, ints(&[4]));
        assert_eq!(smith_invariants(&IntMatrix::from_rows(&[[4, 6], [6, 4]])), ints(&[2, 10]));
        assert!(BigInt::one() == r.left_transform.det().abs());
    }
}
