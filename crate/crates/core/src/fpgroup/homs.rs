//! Backtracking search for homomorphisms onto a finite permutation group.

use super::perm::Perm;
use super::presentation::Presentation;
use super::word::generator_of;
use super::FpError;
use std::collections::{BTreeSet, HashMap};

/// A finite group stored by its multiplication table. Element 0 is the
/// identity.
pub struct ElementTable {
    elements: Vec<Perm>,
    mult: Vec<u32>,
    inverse: Vec<u32>,
    order_of: Vec<u32>,
}

impl ElementTable {
    /// Enumerates the group generated by `gens`, failing beyond `limit`
    /// elements.
    pub fn new(gens: &[Perm], limit: usize) -> Result<Self, FpError> {
        let degree = gens.first().map_or(0, Perm::degree);
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, u32> = HashMap::from([(elements[0].clone(), 0)]);
        // parent[b] = (a, g) with b = a * gens[g]
        let mut parent: Vec<(u32, usize)> = vec![(0, 0)];
        let mut k = 0;
        while k < elements.len() {
            for (g, p) in gens.iter().enumerate() {
                let q = elements[k].then(p);
                if !index.contains_key(&q) {
                    if elements.len() >= limit {
                        return Err(FpError::BoundExceeded(limit));
                    }
                    index.insert(q.clone(), elements.len() as u32);
                    elements.push(q);
                    parent.push((k as u32, g));
                }
            }
            k += 1;
        }
        let n = elements.len();
        let mut right = vec![0u32; n * gens.len()];
        for (a, e) in elements.iter().enumerate() {
            for (g, p) in gens.iter().enumerate() {
                right[a * gens.len() + g] = index[&e.then(p)];
            }
        }
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            mult[a * n] = a as u32;
        }
        // b runs in breadth-first order, so its parent column is ready
        for b in 1..n {
            let (pb, g) = parent[b];
            for a in 0..n {
                let x = mult[a * n + pb as usize] as usize;
                mult[a * n + b] = right[x * gens.len() + g];
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mult[a * n + b] == 0).expect("group");
            inverse[a] = b as u32;
        }
        let mut order_of = vec![1u32; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mult[x * n + a] as usize;
                k += 1;
            }
            order_of[a] = k;
        }
        Ok(ElementTable {
            elements,
            mult,
            inverse,
            order_of,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, a: u32) -> &Perm {
        &self.elements[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.order_of[a as usize]
    }

    pub fn conjugate(&self, a: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), a), by)
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_size(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomOptions {
    pub surjective_only: bool,
    /// Keep one representative per conjugacy class of tuples.
    pub up_to_conjugacy: bool,
    /// Maximum number of candidate images tried.
    pub node_limit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSearch {
    /// Generator images, sorted.
    pub found: Vec<Vec<Perm>>,
    /// False when the node limit stopped the search; `found` is then partial.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    table: &'a ElementTable,
    /// Relators as (generator, inverse?) letters, grouped by the largest
    /// generator they use.
    closing: Vec<Vec<Vec<(usize, bool)>>>,
    candidates: Vec<Vec<u32>>,
    opts: HomOptions,
    nodes: u64,
    stopped: bool,
    images: Vec<u32>,
    found: BTreeSet<Vec<u32>>,
}

impl Search<'_> {
    fn relator_holds(&self, r: &[(usize, bool)]) -> bool {
        let t = self.table;
        let mut x = 0u32;
        for &(g, inv) in r {
            let y = self.images[g];
            x = t.mul(x, if inv { t.inv(y) } else { y });
        }
        x == 0
    }

    fn canonical(&self) -> Vec<u32> {
        let t = self.table;
        (0..t.len() as u32)
            .map(|c| self.images.iter().map(|&a| t.conjugate(a, c)).collect::<Vec<_>>())
            .min()
            .expect("non-empty group")
    }

    fn run(&mut self, depth: usize) {
        if self.stopped {
            return;
        }
        if depth == self.images.len() {
            let t = self.table;
            if self.opts.surjective_only && t.subgroup_size(&self.images) != t.len() {
                return;
            }
            let key = if self.opts.up_to_conjugacy {
                self.canonical()
            } else {
                self.images.clone()
            };
            self.found.insert(key);
            return;
        }
        let cands = std::mem::take(&mut self.candidates[depth]);
        for &a in &cands {
            if self.nodes >= self.opts.node_limit {
                self.stopped = true;
                break;
            }
            self.nodes += 1;
            if depth == 0 && self.opts.up_to_conjugacy {
                // any tuple is conjugate to one whose first entry is the
                // least element of its class
                let t = self.table;
                if (0..t.len() as u32).any(|c| t.conjugate(a, c) < a) {
                    continue;
                }
            }
            self.images[depth] = a;
            if self.closing[depth].iter().all(|r| self.relator_holds(r)) {
                self.run(depth + 1);
            }
        }
        self.candidates[depth] = cands;
    }
}

/// All homomorphisms from `pres` to the group generated by `target`,
/// subject to `opts`.
pub fn find_homomorphisms(pres: &Presentation, target: &[Perm], opts: HomOptions) -> Result<HomSearch, FpError> {
    let table = ElementTable::new(target, 1 << 16)?;
    find_homomorphisms_in(pres, &table, opts)
}

pub fn find_homomorphisms_in(pres: &Presentation, table: &ElementTable, opts: HomOptions) -> Result<HomSearch, FpError> {
    let k = pres.ngens();
    let mut closing = vec![Vec::new(); k];
    // an image of g must have order dividing n for every relator g^n
    let mut order_bound: Vec<Option<u64>> = vec![None; k];
    for r in pres.relators() {
        let Some(m) = r.max_generator() else { continue };
        let letters: Vec<(usize, bool)> = r.letters().iter().map(|&l| (generator_of(l), l < 0)).collect();
        if letters.iter().all(|&(g, _)| g == letters[0].0) {
            let n = letters.len() as u64;
            let g = letters[0].0;
            order_bound[g] = Some(order_bound[g].map_or(n, |b| num_integer::gcd(b, n)));
        }
        closing[m].push(letters);
    }
    let candidates: Vec<Vec<u32>> = order_bound
        .iter()
        .map(|b| {
            (0..table.len() as u32)
                .filter(|&a| b.is_none_or(|n| n % u64::from(table.order_of(a)) == 0))
                .collect()
        })
        .collect();
    let mut s = Search {
        table,
        closing,
        candidates,
        opts,
        nodes: 0,
        stopped: false,
        images: vec![0; k],
        found: BTreeSet::new(),
    };
    if k > 0 {
        s.run(0);
    }
    let found = s
        .found
        .iter()
        .map(|t| t.iter().map(|&a| table.element(a).clone()).collect())
        .collect();
    Ok(HomSearch {
        found,
        complete: !s.stopped,
        nodes: s.nodes,
    })
}
