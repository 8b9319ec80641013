use super::lattice::{canonical_point, AbelianSurface, Lattice2, TorusPoint};
use super::TorusError;
use crate::arith::{
    solve_torus_congruence, GaussianInteger, GaussianRational, IntMatrix, Rational, SolutionSet,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::sync::Arc;

type G = GaussianRational;

/// The elliptic curve `a w + b z = c (mod a lambda1 + b lambda2)`.
///
/// Stored in canonical form: `(a, b)` primitive in `Z[i]` and, among its four
/// unit multiples, the one whose tuple `(re a, im a, re b, im b)` is
/// lexicographically largest; `c` reduced into the fundamental domain of
/// the Hermite basis of `a lambda1 + b lambda2`.
#[derive(Clone, Debug)]
pub struct TorusLine {
    a: GaussianInteger,
    b: GaussianInteger,
    c: G,
    lattice: Lattice2,
    surface: Arc<AbelianSurface>,
}

impl TorusLine {
    pub fn new(
        surface: &Arc<AbelianSurface>,
        a: GaussianInteger,
        b: GaussianInteger,
        c: G,
    ) -> Result<Self, TorusError> {
        if a.is_zero() && b.is_zero() {
            return Err(TorusError::ZeroDirection);
        }
        let g = a.gcd(&b);
        let a = a.div_exact(&g).expect("gcd divides");
        let b = b.div_exact(&g).expect("gcd divides");
        let c = c.div(&g.to_rational()).expect("gcd is nonzero");
        let u = GaussianInteger::units()
            .into_iter()
            .max_by_key(|u| {
                let (ua, ub) = (u * &a, u * &b);
                (ua.re, ua.im, ub.re, ub.im)
            })
            .expect("four units");
        let (a, b, c) = (&u * &a, &u * &b, &u.to_rational() * &c);
        let lattice = direction_lattice(surface, &a, &b);
        let c = lattice.reduce(&c);
        Ok(TorusLine {
            a,
            b,
            c,
            lattice,
            surface: Arc::clone(surface),
        })
    }

    pub fn a(&self) -> &GaussianInteger {
        &self.a
    }

    pub fn b(&self) -> &GaussianInteger {
        &self.b
    }

    pub fn c(&self) -> &G {
        &self.c
    }

    pub fn surface(&self) -> &Arc<AbelianSurface> {
        &self.surface
    }

    /// `a lambda1 + b lambda2`, the lattice the constant lives modulo.
    pub fn value_lattice(&self) -> &Lattice2 {
        &self.lattice
    }

    /// Evaluates the defining form at `(w, z)`.
    pub fn form(&self, w: &G, z: &G) -> G {
        &(&self.a.to_rational() * w) + &(&self.b.to_rational() * z)
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.lattice.contains(&(&self.form(&p.w, &p.z) - &self.c))
    }

    /// `a1 b2 - a2 b1`; zero iff the lines are parallel.
    pub fn cross(&self, other: &TorusLine) -> GaussianInteger {
        &(&self.a * &other.b) - &(&other.a * &self.b)
    }

    pub fn is_parallel(&self, other: &TorusLine) -> bool {
        self.cross(other).is_zero()
    }

    /// Same curve with the constant shifted by `delta`.
    pub fn shifted(&self, delta: &G) -> TorusLine {
        TorusLine::new(&self.surface, self.a.clone(), self.b.clone(), &self.c + delta)
            .expect("direction unchanged")
    }

    /// Total order on canonical forms (surface ignored).
    pub fn sort_key(&self) -> (&GaussianInteger, &GaussianInteger, &G) {
        (&self.a, &self.b, &self.c)
    }

    /// A point of the curve, used for sampling.
    pub fn point_at(&self, t1: &Rational, t2: &Rational) -> TorusPoint {
        // (w, z) = (c/a, 0) + s (b, -a) hits every point when a != 0; the
        // real parameters t1, t2 run along s = t1 + t2 i.
        let s = G::new(t1.clone(), t2.clone());
        let (a, b) = (self.a.to_rational(), self.b.to_rational());
        let (w0, z0) = if !a.is_zero() {
            (self.c.div(&a).expect("nonzero"), G::zero())
        } else {
            (G::zero(), self.c.div(&b).expect("nonzero"))
        };
        canonical_point(&(&w0 + &(&s * &b)), &(&z0 - &(&s * &a)), &self.surface)
    }
}

fn direction_lattice(s: &AbelianSurface, a: &GaussianInteger, b: &GaussianInteger) -> Lattice2 {
    let (a, b) = (a.to_rational(), b.to_rational());
    let [o1, o2] = s.lambda1.basis();
    let [o3, o4] = s.lambda2.basis();
    Lattice2::spanned_by(&[&a * o1, &a * o2, &b * o3, &b * o4]).expect("nonzero direction")
}

impl PartialEq for TorusLine {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key() && self.surface == other.surface
    }
}

impl Eq for TorusLine {}

impl fmt::Display for TorusLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} c={}", self.a, self.b, self.c)
    }
}

fn check_pair(l1: &TorusLine, l2: &TorusLine) -> Result<(), TorusError> {
    if l1.surface != l2.surface {
        return Err(TorusError::DifferentSurface);
    }
    if l1 == l2 {
        return Err(TorusError::SameCurve(l1.to_string()));
    }
    Ok(())
}

/// The realified system `x -> (l1(x), l2(x))` in lattice coordinates: rows
/// are coordinates in each line's value lattice, columns the real basis of
/// the surface.
fn realified_system(l1: &TorusLine, l2: &TorusLine) -> (IntMatrix, Vec<Rational>) {
    let basis = l1.surface.real_basis();
    let mut m = IntMatrix::zeros(4, 4);
    let mut rhs = Vec::with_capacity(4);
    for (k, l) in [l1, l2].into_iter().enumerate() {
        for (j, e) in basis.iter().enumerate() {
            let v = l.lattice.coords(&l.form(&e[0], &e[1]));
            for (r, x) in v.into_iter().enumerate() {
                debug_assert!(x.is_integer());
                m[(2 * k + r, j)] = x.to_integer();
            }
        }
        rhs.extend(l.lattice.coords(&l.c));
    }
    (m, rhs)
}

/// All common points, sorted. Empty for parallel distinct lines.
pub fn intersect_lines(l1: &TorusLine, l2: &TorusLine) -> Result<Vec<TorusPoint>, TorusError> {
    check_pair(l1, l2)?;
    if l1.is_parallel(l2) {
        return Ok(Vec::new());
    }
    let (m, rhs) = realified_system(l1, l2);
    match solve_torus_congruence(&m, &rhs)? {
        SolutionSet::Finite(xs) => {
            let mut pts: Vec<TorusPoint> = xs
                .iter()
                .map(|x| {
                    let (w, z) = l1.surface.from_coords(x);
                    canonical_point(&w, &z, &l1.surface)
                })
                .collect();
            pts.sort();
            Ok(pts)
        }
        SolutionSet::NoSolution => Ok(Vec::new()),
        SolutionSet::Positive { .. } => unreachable!("non-parallel lines meet in finitely many points"),
    }
}

/// Number of intersection points, without enumerating them.
pub fn intersection_number(l1: &TorusLine, l2: &TorusLine) -> Result<BigInt, TorusError> {
    check_pair(l1, l2)?;
    if l1.is_parallel(l2) {
        return Ok(BigInt::zero());
    }
    Ok(realified_system(l1, l2).0.det().abs())
}
