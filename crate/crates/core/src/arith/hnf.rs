use super::matrix::IntMatrix;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// Returns only the nonzero rows: an echelon basis with positive pivots and
/// every entry above a pivot reduced into `[0, pivot)`. Two generating sets
/// span the same lattice iff their Hermite forms are equal.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down column c on rows r.. until one nonzero remains.
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &-q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&p);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    let rows: Vec<usize> = (0..r).collect();
    let cols: Vec<usize> = (0..n).collect();
    h.select(&rows, &cols)
}
