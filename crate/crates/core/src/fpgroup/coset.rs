//! Todd–Coxeter coset enumeration, HLT strategy with lookahead.

use super::presentation::Presentation;
use super::word::{generator_of, Word};
use super::FpError;

const NONE: u32 = u32::MAX;

/// Default bound on live cosets, overridable through `BALLQ_MAX_COSETS`.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

pub fn max_cosets_from_env() -> usize {
    std::env::var("BALLQ_MAX_COSETS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// Column of a letter: `2g` for generator `g`, `2g + 1` for its inverse.
fn col(l: i32) -> usize {
    2 * generator_of(l) + usize::from(l < 0)
}

/// A complete coset table. Coset 0 is the subgroup itself; the others are
/// numbered in order of first appearance scanning rows then columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
    subgroup: Vec<Word>,
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.rows.len() / (2 * self.ngens).max(1)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup
    }

    /// `coset . letter`.
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.rows[coset * 2 * self.ngens + col(letter)] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The action of generator `g` on cosets as an image list.
    pub fn generator_action(&self, g: usize) -> Vec<u32> {
        (0..self.n_cosets()).map(|c| self.rows[c * 2 * self.ngens + 2 * g]).collect()
    }

    /// Every relator returns every coset to itself, every subgroup
    /// generator fixes coset 0, and each column is inverse to its partner.
    pub fn is_compatible(&self, pres: &Presentation) -> bool {
        let n = self.n_cosets();
        if self.rows.iter().any(|&v| v == NONE || v as usize >= n) {
            return false;
        }
        for c in 0..n {
            for g in 0..self.ngens {
                let d = self.act(c, (g + 1) as i32);
                if self.act(d, -((g + 1) as i32)) != c {
                    return false;
                }
            }
            if pres.relators().iter().any(|r| self.trace(c, r) != c) {
                return false;
            }
        }
        self.subgroup.iter().all(|w| self.trace(0, w) == 0)
    }

    /// A word `t_c` with `0 . t_c = c` for every coset, from the
    /// breadth-first spanning tree.
    pub fn transversal(&self) -> Vec<Word> {
        let n = self.n_cosets();
        let mut out: Vec<Option<Word>> = vec![None; n];
        out[0] = Some(Word::empty());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for k in 0..2 * self.ngens {
                let l = if k % 2 == 0 { (k / 2 + 1) as i32 } else { -((k / 2 + 1) as i32) };
                let d = self.act(c, l);
                if out[d].is_none() {
                    let w = out[c].as_ref().unwrap().mul(&Word::from_letters([l]));
                    out[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        out.into_iter().map(|w| w.expect("table is connected")).collect()
    }

    /// Builds a table from generator actions; `actions[g][c]` is `c . g`.
    /// Returns `None` unless every action is a permutation of `0..n`.
    pub fn from_actions(actions: &[Vec<u32>], subgroup: Vec<Word>) -> Option<CosetTable> {
        let ngens = actions.len();
        let n = actions.first().map_or(1, Vec::len);
        let mut rows = vec![NONE; n * 2 * ngens];
        for (g, act) in actions.iter().enumerate() {
            if act.len() != n {
                return None;
            }
            for (c, &d) in act.iter().enumerate() {
                if d as usize >= n || rows[d as usize * 2 * ngens + 2 * g + 1] != NONE {
                    return None;
                }
                rows[c * 2 * ngens + 2 * g] = d;
                rows[d as usize * 2 * ngens + 2 * g + 1] = c as u32;
            }
        }
        Some(CosetTable {
            ngens,
            rows,
            subgroup,
        })
    }
}

struct Full;

struct Enumerator<'a> {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
    relators: &'a [Vec<usize>],
}

impl<'a> Enumerator<'a> {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.width + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.width + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> u32 {
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.live += 1;
        n
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Full> {
        if self.live >= self.max {
            return Err(Full);
        }
        let d = self.new_coset();
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let mu = self.rep(e);
                let nu = self.rep(f);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` from `alpha`, defining cosets only if `fill`.
    fn scan(&mut self, alpha: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i as isize > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self) {
        let rels = self.relators;
        let mut c = 0;
        while c < self.parent.len() as u32 {
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Drops dead rows, keeping the relative order of live ones. Returns
    /// the new position of the first live row at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let n = self.parent.len();
        let mut new_index = vec![NONE; n];
        let mut k = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.width);
        for c in 0..n {
            if new_index[c] == NONE {
                continue;
            }
            for x in 0..self.width {
                let d = self.table[c * self.width + x];
                table.push(if d == NONE { NONE } else { new_index[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..k).collect();
        (cursor as usize..n)
            .find(|&c| new_index[c] != NONE)
            .map_or(k, |c| new_index[c])
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup`. Fails
/// with `BoundExceeded` when more than `max_cosets` live cosets would be
/// needed, which says nothing about the index.
pub fn todd_coxeter(pres: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, FpError> {
    let ngens = pres.ngens();
    let width = 2 * ngens;
    if ngens == 0 {
        return Ok(CosetTable {
            ngens,
            rows: Vec::new(),
            subgroup: subgroup.to_vec(),
        });
    }
    let to_cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&l| col(l)).collect() };
    let relators: Vec<Vec<usize>> = pres.relators().iter().map(to_cols).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
    let mut e = Enumerator {
        width,
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        max: max_cosets.max(1),
        queue: Vec::new(),
        relators: &relators,
    };
    e.new_coset();

    let full = |e: &mut Enumerator<'_>, cursor: u32| -> Result<u32, FpError> {
        e.lookahead();
        let c = e.compact(cursor);
        if e.live >= e.max {
            return Err(FpError::BoundExceeded(e.max));
        }
        Ok(c)
    };

    let mut k = 0;
    while k < subs.len() {
        if e.scan(0, &subs[k], true).is_err() {
            full(&mut e, 0)?;
            continue;
        }
        k += 1;
    }

    let mut c = 0u32;
    'cosets: while (c as usize) < e.parent.len() {
        if e.is_live(c) {
            for r in &relators {
                if !e.is_live(c) {
                    break;
                }
                if e.scan(c, r, true).is_err() {
                    c = full(&mut e, c)?;
                    continue 'cosets;
                }
            }
            for x in 0..width {
                if e.is_live(c) && e.get(c, x) == NONE && e.define(c, x).is_err() {
                    c = full(&mut e, c)?;
                    continue 'cosets;
                }
            }
        }
        c += 1;
    }
    e.compact(0);
    Ok(standardize(ngens, &e.table, subgroup.to_vec()))
}

/// Renumbers cosets in order of first appearance.
fn standardize(ngens: usize, table: &[u32], subgroup: Vec<Word>) -> CosetTable {
    let width = 2 * ngens;
    let n = table.len() / width;
    let mut new_of = vec![NONE; n];
    let mut order = vec![0u32];
    new_of[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k] as usize;
        for x in 0..width {
            let d = table[c * width + x] as usize;
            if new_of[d] == NONE {
                new_of[d] = order.len() as u32;
                order.push(d as u32);
            }
        }
        k += 1;
    }
    let mut rows = Vec::with_capacity(order.len() * width);
    for &c in &order {
        for x in 0..width {
            rows.push(new_of[table[c as usize * width + x] as usize]);
        }
    }
    CosetTable {
        ngens,
        rows,
        subgroup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::parse_presentation;

    fn s3() -> Presentation {
        parse_presentation("gens a,b ; rels a^2, b^2, (a*b)^3").unwrap()
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        let p = s3();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.n_cosets(), 6);
        assert!(t.is_compatible(&p));
        let a = p.parse_word("a").unwrap();
        let t = todd_coxeter(&p, &[a], 100).unwrap();
        assert_eq!(t.n_cosets(), 3);
        assert!(t.is_compatible(&p));
    }

    #[test]
    fn cyclic_and_trivial_cases() {
        let p = parse_presentation("gens a ; rels a^4").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 10).unwrap().n_cosets(), 4);
        let a2 = p.parse_word("a^2").unwrap();
        assert_eq!(todd_coxeter(&p, &[a2], 10).unwrap().n_cosets(), 2);
        let p = parse_presentation("gens a,b ; rels a, b").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 10).unwrap().n_cosets(), 1);
    }

    #[test]
    fn bound_is_reported() {
        let p = parse_presentation("gens a ; rels a^50").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 10), Err(FpError::BoundExceeded(10)));
        // free group: never finishes
        let p = parse_presentation("gens a,b ; rels").unwrap();
        assert!(matches!(todd_coxeter(&p, &[], 50), Err(FpError::BoundExceeded(_))));
    }

    #[test]
    fn tight_bound_uses_lookahead() {
        // A presentation of the binary octahedral-like group of order 48
        // that overshoots under plain HLT.
        let p = parse_presentation("gens a,b ; rels a^4, b^3, (a*b)^2 = a^2").unwrap();
        let loose = todd_coxeter(&p, &[], 10_000).unwrap();
        let n = loose.n_cosets();
        let tight = todd_coxeter(&p, &[], n + 1).unwrap();
        assert_eq!(tight.n_cosets(), n);
        assert_eq!(tight, loose);
        assert!(tight.is_compatible(&p));
    }

    #[test]
    fn transversal_reaches_each_coset() {
        let p = s3();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        for (c, w) in t.transversal().iter().enumerate() {
            assert_eq!(t.trace(0, w), c);
        }
    }
}
