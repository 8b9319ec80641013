//! Smith form and torus congruences against brute-force oracles.

use ballq_core::arith::{smith_invariants, smith_normal_form, solve_torus_congruence, IntMatrix, Rational, SolutionSet};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn det_i64(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => (0..a.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

/// Every `x = v / n` with `v` in `[0, n)^k` and `A x = b (mod 1)`, where
/// `b = p / q` coordinatewise and `n` is a common denominator of all
/// solutions.
fn brute_force(a: &[Vec<i64>], p: &[i64], q: &[i64]) -> Vec<Vec<Rational>> {
    let k = a.len();
    let l = q.iter().fold(1i64, |acc, &d| acc.lcm(&d));
    let n = det_i64(a).abs() * l;
    let mut out = Vec::new();
    let mut v = vec![0i64; k];
    loop {
        let ok = (0..k).all(|i| {
            let lhs: i64 = (0..k).map(|j| a[i][j] * v[j]).sum();
            (lhs - n / q[i] * p[i]).rem_euclid(n) == 0
        });
        if ok {
            out.push(v.iter().map(|&x| Rational::new(x.into(), n.into())).collect());
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

fn square(k: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-bound..=bound, k), k)
}

fn rhs(k: usize, max_den: i64) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    proptest::collection::vec((0i64..12, 1i64..=max_den), k)
        .prop_map(|v| v.into_iter().map(|(p, q)| (p % q, q)).unzip())
}

/// Matrix with numerators and denominators of the right-hand side.
type System = (Vec<Vec<i64>>, (Vec<i64>, Vec<i64>));

fn system() -> impl Strategy<Value = System> {
    prop_oneof![
        square(1, 9).prop_flat_map(|a| (Just(a), rhs(1, 6))),
        square(2, 4).prop_flat_map(|a| (Just(a), rhs(2, 4))),
        square(3, 2).prop_flat_map(|a| (Just(a), rhs(3, 2))),
    ]
}

fn to_matrix(a: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(a)
}

/// A product of random elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, 0u8..3), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, kind) in ops {
            match kind {
                0 if i != j => m.add_row_multiple(i, j, &BigInt::from(k)),
                1 => m.swap_rows(i, j),
                _ => m.negate_row(i),
            }
        }
        m
    })
}

fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn congruence_solutions_match_enumeration((a, (p, q)) in system()) {
        let d = det_i64(&a);
        prop_assume!(d != 0 && d.abs() <= 64);
        let b: Vec<Rational> = p.iter().zip(&q).map(|(&p, &q)| Rational::new(p.into(), q.into())).collect();
        let got = solve_torus_congruence(&to_matrix(&a), &b).unwrap();
        let want = brute_force(&a, &p, &q);
        prop_assert_eq!(want.len() as i64, d.abs());
        prop_assert_eq!(got, SolutionSet::Finite(want));
    }

    #[test]
    fn smith_invariants_ignore_unimodular_changes(
        (m, u, v) in matrix(4).prop_flat_map(|m| {
            let (r, c) = (m.rows(), m.cols());
            (Just(m), unimodular(r), unimodular(c))
        })
    ) {
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        let moved = u.mul(&m).mul(&v);
        prop_assert_eq!(smith_invariants(&moved), smith_invariants(&m));
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left_transform.mul(&m).mul(&s.right_transform), s.diagonal());
        prop_assert!(s.left_transform.is_unimodular() && s.right_transform.is_unimodular());
        for w in s.invariants.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.invariants.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn invariant_products_are_minor_gcds(m in matrix(4)) {
        let inv = smith_invariants(&m);
        let mut prod = BigInt::one();
        for r in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows(), r) {
                for cols in subsets(m.cols(), r) {
                    g = g.gcd(&m.select(&rows, &cols).det());
                }
            }
            if r <= inv.len() {
                prod *= &inv[r - 1];
                prop_assert_eq!(&g, &prod, "r = {}", r);
            } else {
                prop_assert!(g.is_zero());
            }
        }
    }

    #[test]
    fn rationals_form_a_field(x in (-50i64..50, 1i64..30), y in (-50i64..50, 1i64..30), z in (-50i64..50, 1i64..30)) {
        let r = |(n, d): (i64, i64)| Rational::new(n.into(), d.into());
        let (a, b, c) = (r(x), r(y), r(z));
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        let canon = Rational::new(a.numer().clone(), a.denom().clone());
        prop_assert_eq!(&canon, &a);
        prop_assert!(a.denom().is_positive() && a.numer().gcd(a.denom()).is_one());
    }
}

#[test]
fn oracle_sanity() {
    // 2x on the circle: 0 and 1/2
    let got = brute_force(&[vec![2]], &[0], &[1]);
    assert_eq!(got, vec![vec![Rational::new(0.into(), 1.into())], vec![Rational::new(1.into(), 2.into())]]);
    assert_eq!(brute_force(&[vec![1, 1], vec![1, -1]], &[1, 0], &[2, 1]).len(), 2);
    assert_eq!(subsets(4, 2).len(), 6);
}
