//! Invariant factors of large sparse relation matrices.
//!
//! Relation matrices from subgroup rewriting have thousands of columns but
//! almost every row is short and most columns can be eliminated through a
//! `±1` entry. Those pivots are removed first (cheapest Markowitz cost
//! first), which is the abelian shadow of a Tietze elimination. Whatever is
//! left is usually tiny and goes through the dense Smith form.

use super::matrix::IntMatrix;
use super::snf::smith_invariants;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A sparse integer row: column index to nonzero value.
pub type SparseRow = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSnf {
    pub rank: usize,
    /// Nonzero invariant factors that are not 1, in divisibility order.
    pub nontrivial: Vec<BigInt>,
}

pub fn sparse_invariants(rows: Vec<SparseRow>, ncols: usize) -> SparseSnf {
    let mut rows: Vec<Option<SparseRow>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|_, v| !v.is_zero());
            (!r.is_empty()).then_some(r)
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &c in r.keys() {
                col_rows[c].insert(i);
            }
        }
    }
    // Rows bucketed by length so short unit rows are found quickly.
    let mut by_len: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().map(|r| (r.len(), i)))
        .collect();
    let mut rank = 0;
    let mut skipped: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some(&(len, pi)) = by_len.iter().next() {
        by_len.remove(&(len, pi));
        let row = rows[pi].as_ref().expect("bucketed rows are live");
        let pivot = row
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(c, _)| col_rows[**c].len())
            .map(|(c, v)| (*c, v.clone()));
        let Some((pc, pv)) = pivot else {
            skipped.insert((len, pi));
            continue;
        };
        let prow = rows[pi].take().expect("live");
        for &c in prow.keys() {
            col_rows[c].remove(&pi);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for ti in targets {
            let mut trow = rows[ti].take().expect("indexed rows are live");
            let old_len = trow.len();
            // pv is ±1, so pv^-1 = pv
            let k = -(&trow[&pc] * &pv);
            for (&c, v) in &prow {
                let entry = trow.entry(c).or_insert_with(BigInt::zero);
                *entry += &k * v;
                if entry.is_zero() {
                    trow.remove(&c);
                    col_rows[c].remove(&ti);
                } else {
                    col_rows[c].insert(ti);
                }
            }
            debug_assert!(!trow.contains_key(&pc));
            let was_skipped = skipped.remove(&(old_len, ti));
            if !was_skipped {
                by_len.remove(&(old_len, ti));
            }
            if !trow.is_empty() {
                by_len.insert((trow.len(), ti));
                rows[ti] = Some(trow);
            }
        }
        rank += 1;
    }

    let live: Vec<&SparseRow> = rows.iter().flatten().collect();
    let cols: BTreeSet<usize> = live.iter().flat_map(|r| r.keys().copied()).collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let mut dense = IntMatrix::zeros(live.len(), cols.len());
    for (i, r) in live.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            if let Some(v) = r.get(c) {
                dense[(i, j)] = v.clone();
            }
        }
    }
    let inv = smith_invariants(&dense);
    rank += inv.len();
    SparseSnf {
        rank,
        nontrivial: inv.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Converts dense rows to the sparse representation.
pub fn sparse_rows_of(m: &IntMatrix) -> Vec<SparseRow> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::snf::smith_normal_form;
    use proptest::prelude::*;

    #[test]
    fn unit_chain_then_torsion() {
        let m = IntMatrix::from_rows(&[[1, -1, 0], [0, 1, -1], [0, 0, 4], [0, 2, 0]]);
        let s = sparse_invariants(sparse_rows_of(&m), 3);
        assert_eq!(s.rank, 3);
        assert_eq!(s.nontrivial, vec![BigInt::from(2)]);
    }

    proptest! {
        #[test]
        fn agrees_with_dense(entries in proptest::collection::vec(-3i64..4, 20), zeros in proptest::collection::vec(0u8..3, 20)) {
            let vals: Vec<i64> = entries.iter().zip(&zeros).map(|(&e, &z)| if z == 0 { 0 } else { e }).collect();
            let m = IntMatrix::from_rows(&vals.chunks(4).collect::<Vec<_>>());
            let dense = smith_normal_form(&m);
            let sparse = sparse_invariants(sparse_rows_of(&m), 4);
            prop_assert_eq!(sparse.rank, dense.rank);
            let expect: Vec<BigInt> = dense.invariants.into_iter().filter(|d| !d.is_one()).collect();
            prop_assert_eq!(sparse.nontrivial, expect);
        }
    }
}
