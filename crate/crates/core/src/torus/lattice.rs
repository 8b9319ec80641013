use super::TorusError;
use crate::arith::{
    common_denominator, frac, hermite_normal_form, GaussianRational, IntMatrix, Rational,
};
use num_traits::Zero;
use std::fmt;

type G = GaussianRational;

/// A rank-2 lattice `Z omega1 + Z omega2` in `C`.
#[derive(Clone, Debug)]
pub struct Lattice2 {
    omega1: G,
    omega2: G,
}

impl Lattice2 {
    pub fn new(omega1: G, omega2: G) -> Result<Self, TorusError> {
        let l = Lattice2 { omega1, omega2 };
        if l.det().is_zero() {
            return Err(TorusError::DegenerateLattice);
        }
        Ok(l)
    }

    /// `Z[1, i]`.
    pub fn gaussian() -> Self {
        Lattice2 {
            omega1: G::one(),
            omega2: G::i(),
        }
    }

    /// The lattice spanned by `gens` with its Hermite-reduced basis, or `None`
    /// when the span is not of rank 2.
    pub fn spanned_by(gens: &[G]) -> Option<Self> {
        let den = common_denominator(gens.iter().flat_map(|g| [&g.re, &g.im]));
        let d = Rational::from_integer(den.clone());
        let mut m = IntMatrix::zeros(gens.len(), 2);
        for (k, g) in gens.iter().enumerate() {
            m[(k, 0)] = (&g.re * &d).to_integer();
            m[(k, 1)] = (&g.im * &d).to_integer();
        }
        let h = hermite_normal_form(&m);
        if h.rows() != 2 {
            return None;
        }
        let basis = |i: usize| {
            G::new(
                Rational::new(h[(i, 0)].clone(), den.clone()),
                Rational::new(h[(i, 1)].clone(), den.clone()),
            )
        };
        Some(Lattice2 {
            omega1: basis(0),
            omega2: basis(1),
        })
    }

    pub fn omega1(&self) -> &G {
        &self.omega1
    }

    pub fn omega2(&self) -> &G {
        &self.omega2
    }

    pub fn basis(&self) -> [&G; 2] {
        [&self.omega1, &self.omega2]
    }

    fn det(&self) -> Rational {
        &self.omega1.re * &self.omega2.im - &self.omega1.im * &self.omega2.re
    }

    /// Area of a fundamental domain.
    pub fn covolume(&self) -> Rational {
        num_traits::Signed::abs(&self.det())
    }

    /// Real coordinates `(α, β)` with `x = α omega1 + β omega2`.
    pub fn coords(&self, x: &G) -> [Rational; 2] {
        let d = self.det();
        let (o1, o2) = (&self.omega1, &self.omega2);
        [
            (&x.re * &o2.im - &x.im * &o2.re) / &d,
            (&o1.re * &x.im - &o1.im * &x.re) / &d,
        ]
    }

    pub fn from_coords(&self, alpha: &Rational, beta: &Rational) -> G {
        &self.omega1.scale(alpha) + &self.omega2.scale(beta)
    }

    pub fn contains(&self, x: &G) -> bool {
        self.coords(x).iter().all(|c| c.is_integer())
    }

    /// The representative of `x` with both coordinates in `[0, 1)`.
    pub fn reduce(&self, x: &G) -> G {
        let [a, b] = self.coords(x);
        self.from_coords(&frac(&a), &frac(&b))
    }

    pub fn is_sublattice_of(&self, other: &Lattice2) -> bool {
        other.contains(&self.omega1) && other.contains(&self.omega2)
    }
}

/// Lattices compare as sets, not by basis.
impl PartialEq for Lattice2 {
    fn eq(&self, other: &Self) -> bool {
        self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }
}

impl Eq for Lattice2 {}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.omega1, self.omega2)
    }
}

/// `C^2 / (lambda1 x lambda2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSurface {
    pub lambda1: Lattice2,
    pub lambda2: Lattice2,
}

impl AbelianSurface {
    pub fn new(lambda1: Lattice2, lambda2: Lattice2) -> Self {
        AbelianSurface { lambda1, lambda2 }
    }

    /// `E x E` with `E = C / Z[1, i]`.
    pub fn gaussian_square() -> Self {
        Self::new(Lattice2::gaussian(), Lattice2::gaussian())
    }

    /// The four real basis vectors of `lambda1 x lambda2`, as points of `C^2`.
    pub fn real_basis(&self) -> [[G; 2]; 4] {
        let [a, b] = self.lambda1.basis();
        let [c, d] = self.lambda2.basis();
        [
            [a.clone(), G::zero()],
            [b.clone(), G::zero()],
            [G::zero(), c.clone()],
            [G::zero(), d.clone()],
        ]
    }

    /// Coordinates of `(w, z)` in [`Self::real_basis`].
    pub fn coords(&self, w: &G, z: &G) -> [Rational; 4] {
        let [a, b] = self.lambda1.coords(w);
        let [c, d] = self.lambda2.coords(z);
        [a, b, c, d]
    }

    pub fn from_coords(&self, x: &[Rational]) -> (G, G) {
        (
            self.lambda1.from_coords(&x[0], &x[1]),
            self.lambda2.from_coords(&x[2], &x[3]),
        )
    }

    pub fn contains(&self, w: &G, z: &G) -> bool {
        self.lambda1.contains(w) && self.lambda2.contains(z)
    }
}

impl fmt::Display for AbelianSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda1={} lambda2={}", self.lambda1, self.lambda2)
    }
}

/// A point of an abelian surface in canonical form. The surface is not
/// stored; every operation that produces points takes it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub w: G,
    pub z: G,
}

impl TorusPoint {
    pub fn is_canonical_on(&self, surface: &AbelianSurface) -> bool {
        canonical_point(&self.w, &self.z, surface) == *self
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.z)
    }
}

pub fn canonical_point(w: &G, z: &G, surface: &AbelianSurface) -> TorusPoint {
    TorusPoint {
        w: surface.lambda1.reduce(w),
        z: surface.lambda2.reduce(z),
    }
}
