use super::coset::CosetTable;
use super::perm::{regular_actions, FiniteImage};
use super::presentation::Presentation;
use super::word::{generator_of, letter};
use super::FpError;
use crate::arith::{sparse_invariants, Rational, SparseRow};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::fmt;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...`, each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `(d, multiplicity)` for each distinct torsion coefficient.
    pub fn torsion_counts(&self) -> Vec<(BigInt, usize)> {
        let mut out: Vec<(BigInt, usize)> = Vec::new();
        for d in &self.torsion {
            match out.last_mut() {
                Some((e, n)) if e == d => *n += 1,
                _ => out.push((d.clone(), 1)),
            }
        }
        out
    }
}

impl fmt::Display for AbelianInvariants {
    /// `Z^2 x (Z/2)^3 x Z/4`, or `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (d, n) in self.torsion_counts() {
            parts.push(if n == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{n}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn invariants_of(rows: Vec<SparseRow>, ncols: usize) -> AbelianInvariants {
    let snf = sparse_invariants(rows, ncols);
    AbelianInvariants {
        free_rank: ncols - snf.rank,
        torsion: snf.nontrivial,
    }
}

/// Smith form of the relator exponent-sum matrix.
pub fn abelianization(pres: &Presentation) -> AbelianInvariants {
    let n = pres.ngens();
    let rows = pres
        .relators()
        .iter()
        .map(|r| {
            r.exponent_sums(n)
                .into_iter()
                .enumerate()
                .filter(|(_, e)| *e != 0)
                .map(|(g, e)| (g, BigInt::from(e)))
                .collect()
        })
        .collect();
    invariants_of(rows, n)
}

/// Abelianization of the subgroup whose cosets `table` enumerates, by
/// Reidemeister–Schreier rewriting over the breadth-first spanning tree.
///
/// Schreier generators are the non-tree edges `(c, g)`, so there are
/// `index * ngens - index + 1` of them; each relator is traced from every
/// coset.
pub fn subgroup_abelianization_from_table(pres: &Presentation, table: &CosetTable) -> AbelianInvariants {
    let n = table.n_cosets();
    let ngens = pres.ngens();
    // tree[c * ngens + g]: edge c --g--> c.g is in the spanning tree
    let mut tree = vec![false; n * ngens];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..ngens {
            for inv in [false, true] {
                let d = table.act(c, letter(g, inv));
                if !seen[d] {
                    seen[d] = true;
                    if inv {
                        tree[d * ngens + g] = true;
                    } else {
                        tree[c * ngens + g] = true;
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    let mut column = vec![usize::MAX; n * ngens];
    let mut ncols = 0;
    for (k, &t) in tree.iter().enumerate() {
        if !t {
            column[k] = ncols;
            ncols += 1;
        }
    }
    let mut rows = Vec::with_capacity(n * pres.relators().len());
    for c in 0..n {
        for r in pres.relators() {
            let mut row = SparseRow::new();
            let mut x = c;
            for &l in r.letters() {
                let g = generator_of(l);
                let (edge, sign, next) = if l > 0 {
                    let d = table.act(x, l);
                    (x * ngens + g, 1, d)
                } else {
                    let d = table.act(x, l);
                    (d * ngens + g, -1, d)
                };
                let k = column[edge];
                if k != usize::MAX {
                    *row.entry(k).or_default() += sign;
                }
                x = next;
            }
            rows.push(row);
        }
    }
    invariants_of(rows, ncols)
}

/// Abelian invariants of the kernel of `img`.
pub fn subgroup_abelianization(
    pres: &Presentation,
    img: &FiniteImage,
    max_cosets: usize,
) -> Result<AbelianInvariants, FpError> {
    let limit = img.order.to_usize().filter(|&n| n <= max_cosets).ok_or(FpError::BoundExceeded(max_cosets))?;
    let actions = regular_actions(img, limit)?;
    let table = CosetTable::from_actions(&actions, Vec::new()).expect("regular action is a permutation");
    Ok(subgroup_abelianization_from_table(pres, &table))
}

/// Orbifold Euler characteristic of a cover of the given index.
pub fn euler_cover(chi_orb: &Rational, index: u64) -> Rational {
    chi_orb * Rational::from_integer(BigInt::from(index))
}
