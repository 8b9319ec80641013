//! Permutations, stabilizer chains and finite images of presentations.

use super::presentation::Presentation;
use super::word::{generator_of, Word};
use super::FpError;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::{HashMap, VecDeque};
use std::fmt;

/// A permutation of `0..n` acting on the right: `x^(pq) = (x^p)^q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Checks that `images` is a permutation of `0..n`.
    pub fn new(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    /// From 1-based cycles on `n` points, e.g. `[[1, 2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let y = c[(k + 1) % c.len()];
                if x == 0 || y == 0 || x > n || y > n {
                    return None;
                }
                img[x - 1] = (y - 1) as u32;
            }
        }
        Perm::new(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l: u64 = 1;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on 1-based points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Evaluates `w` with generator `g` sent to `images[g]`.
pub fn evaluate(w: &Word, images: &[Perm], inverses: &[Perm]) -> Perm {
    let n = images.first().map_or(0, Perm::degree);
    let mut x = Perm::identity(n);
    for &l in w.letters() {
        let g = generator_of(l);
        x = x.then(if l > 0 { &images[g] } else { &inverses[g] });
    }
    x
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[x]` maps `point` to `x`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        Level {
            point,
            gens: Vec::new(),
            transversal,
            orbit: vec![point],
        }
    }

    fn rebuild_orbit(&mut self) {
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let t = self.transversal[x].as_ref().unwrap().then(g);
                    self.transversal[y] = Some(t);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

/// A base and strong generating set built by deterministic Schreier–Sims.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<&Perm> = gens.iter().filter(|g| !g.is_identity()).collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let p = (0..degree).find(|&x| g.apply(x) != x).expect("non-identity");
                chain.levels.push(Level::new(p, degree));
            }
        }
        for g in &gens {
            for lvl in chain.levels.iter_mut() {
                lvl.gens.push((*g).clone());
                if g.apply(lvl.point) != lvl.point {
                    break;
                }
            }
        }
        for lvl in chain.levels.iter_mut() {
            lvl.rebuild_orbit();
        }
        let mut i = chain.levels.len();
        while i > 0 {
            match chain.failing_schreier_generator(i - 1) {
                Some((h, m)) => {
                    if m == chain.levels.len() {
                        let p = (0..degree).find(|&x| h.apply(x) != x).expect("non-identity");
                        chain.levels.push(Level::new(p, degree));
                    }
                    for lvl in &mut chain.levels[i..=m] {
                        lvl.gens.push(h.clone());
                        lvl.rebuild_orbit();
                    }
                    i = m + 1;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// The residue of the first Schreier generator of level `i` that does
    /// not sift through the levels below it.
    fn failing_schreier_generator(&self, i: usize) -> Option<(Perm, usize)> {
        let lvl = &self.levels[i];
        for &x in &lvl.orbit {
            let tx = lvl.transversal[x].as_ref().unwrap();
            for g in &lvl.gens {
                let y = g.apply(x);
                let ty = lvl.transversal[y].as_ref().unwrap();
                let s = tx.then(g).then(&ty.inverse());
                if s.is_identity() {
                    continue;
                }
                let (h, m) = self.sift(s, i + 1);
                if !h.is_identity() {
                    return Some((h, m));
                }
            }
        }
        None
    }

    /// Strips `g` through levels from `start`; returns the residue and the
    /// level where it stopped.
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (j, lvl) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(lvl.point);
            match &lvl.transversal[x] {
                Some(t) => g = g.then(&t.inverse()),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }
}

/// Order of the group generated by `gens` on `degree` points.
pub fn group_order(degree: usize, gens: &[Perm]) -> BigUint {
    StabChain::new(degree, gens).order()
}

/// A verified homomorphism from a presentation to a permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteImage {
    pub generator_images: Vec<Perm>,
    pub order: BigUint,
    inverses: Vec<Perm>,
}

impl FiniteImage {
    pub fn degree(&self) -> usize {
        self.generator_images.first().map_or(0, Perm::degree)
    }

    pub fn evaluate(&self, w: &Word) -> Perm {
        evaluate(w, &self.generator_images, &self.inverses)
    }
}

/// Checks every relator under `images` and computes the image order.
pub fn verify_finite_image(pres: &Presentation, images: Vec<Perm>) -> Result<FiniteImage, FpError> {
    if images.len() != pres.ngens() {
        return Err(FpError::ImageCount {
            expected: pres.ngens(),
            found: images.len(),
        });
    }
    let n = images.first().map_or(0, Perm::degree);
    if images.iter().any(|p| p.degree() != n) {
        return Err(FpError::DegreeMismatch);
    }
    let inverses: Vec<Perm> = images.iter().map(Perm::inverse).collect();
    for (k, r) in pres.relators().iter().enumerate() {
        if !evaluate(r, &images, &inverses).is_identity() {
            return Err(FpError::RelatorFails(k));
        }
    }
    let order = group_order(n, &images);
    Ok(FiniteImage {
        generator_images: images,
        order,
        inverses,
    })
}

/// Whether `w` lies in the kernel of the image map.
pub fn kernel_membership(img: &FiniteImage, w: &Word) -> bool {
    img.evaluate(w).is_identity()
}

/// `|image| / |subgroup generated by the images of sub_words|`.
pub fn coset_index_of_image_subgroup(img: &FiniteImage, sub_words: &[Word]) -> BigUint {
    let gens: Vec<Perm> = sub_words.iter().map(|w| img.evaluate(w)).collect();
    &img.order / group_order(img.degree(), &gens)
}

/// The regular action of the image on its own elements, as generator
/// actions on element indices. Element 0 is the identity; elements are
/// numbered breadth-first. Used to read off the kernel as a coset table.
pub fn regular_actions(img: &FiniteImage, limit: usize) -> Result<Vec<Vec<u32>>, FpError> {
    let n = img.degree();
    let mut index: HashMap<Perm, u32> = HashMap::new();
    let mut elems = vec![Perm::identity(n)];
    index.insert(elems[0].clone(), 0);
    let ngens = img.generator_images.len();
    let mut actions = vec![Vec::new(); ngens];
    let mut k = 0;
    while k < elems.len() {
        for (g, p) in img.generator_images.iter().enumerate() {
            let q = elems[k].then(p);
            let next = elems.len() as u32;
            let id = *index.entry(q.clone()).or_insert_with(|| {
                elems.push(q);
                next
            });
            if elems.len() > limit {
                return Err(FpError::BoundExceeded(limit));
            }
            actions[g].push(id);
        }
        k += 1;
    }
    Ok(actions)
}
