use super::lattice::{canonical_point, AbelianSurface, TorusPoint};
use super::line::TorusLine;
use super::TorusError;
use crate::affine::AffineMap;
use crate::arith::{
    common_denominator, solve_torus_congruence, GaussianRational, IntMatrix, Rational,
    SolutionSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

type G = GaussianRational;

/// Finite linear groups on rank-4 lattices have element orders at most 12.
const MAX_LINEAR_ORDER: u64 = 12;

/// An affine map of `C^2` preserving `lambda1 x lambda2`, acting on the
/// surface. The translation is kept reduced, so equality is equality modulo
/// the lattice.
#[derive(Clone, Debug)]
pub struct AffineAuto {
    map: AffineMap,
    realified: IntMatrix,
    surface: Arc<AbelianSurface>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutoOrder {
    Finite(u64),
    Unbounded,
}

impl AffineAuto {
    pub fn new(map: AffineMap, surface: &Arc<AbelianSurface>) -> Result<Self, TorusError> {
        let mut n = IntMatrix::zeros(4, 4);
        for (j, e) in surface.real_basis().iter().enumerate() {
            let [w, z] = map.apply_linear(&e[0], &e[1]);
            for (i, x) in surface.coords(&w, &z).into_iter().enumerate() {
                if !x.is_integer() {
                    return Err(TorusError::NotLatticePreserving(map.to_string()));
                }
                n[(i, j)] = x.to_integer();
            }
        }
        if !n.is_unimodular() {
            return Err(TorusError::NotLatticePreserving(map.to_string()));
        }
        Ok(Self::reduced(map, n, surface))
    }

    pub fn identity(surface: &Arc<AbelianSurface>) -> Self {
        AffineAuto {
            map: AffineMap::identity(),
            realified: IntMatrix::identity(4),
            surface: Arc::clone(surface),
        }
    }

    fn reduced(map: AffineMap, realified: IntMatrix, surface: &Arc<AbelianSurface>) -> Self {
        let [t1, t2] = map.translation();
        let t = canonical_point(t1, t2, surface);
        let map = AffineMap::new(map.linear().clone(), [t.w, t.z]).expect("linear part unchanged");
        AffineAuto {
            map,
            realified,
            surface: Arc::clone(surface),
        }
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn surface(&self) -> &Arc<AbelianSurface> {
        &self.surface
    }

    /// The linear part as an integer matrix on the real lattice basis.
    pub fn realified(&self) -> &IntMatrix {
        &self.realified
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineAuto) -> AffineAuto {
        debug_assert!(self.surface == other.surface);
        Self::reduced(
            self.map.compose(&other.map),
            self.realified.mul(&other.realified),
            &self.surface,
        )
    }

    pub fn inverse(&self) -> AffineAuto {
        let map = self.map.inverse();
        AffineAuto::new(map, &self.surface).expect("inverse of a lattice automorphism")
    }

    pub fn pow(&self, n: u64) -> AffineAuto {
        let mut acc = AffineAuto::identity(&self.surface);
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    fn translation_coords(&self) -> [Rational; 4] {
        let [t1, t2] = self.map.translation();
        self.surface.coords(t1, t2)
    }
}

impl PartialEq for AffineAuto {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.surface == other.surface
    }
}

impl Eq for AffineAuto {}

impl fmt::Display for AffineAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.map.fmt(f)
    }
}

pub fn apply_auto(phi: &AffineAuto, p: &TorusPoint) -> TorusPoint {
    let [w, z] = phi.map.apply(&p.w, &p.z);
    canonical_point(&w, &z, &phi.surface)
}

/// The image curve `phi(L)`.
pub fn image_line(phi: &AffineAuto, l: &TorusLine) -> TorusLine {
    // p in L iff (a, b) M^-1 (phi(p) - t) = c, so the image has direction
    // (a, b) M^-1 and constant c + (a, b) M^-1 t. The value lattice is
    // unchanged because M^-1 preserves lambda1 x lambda2.
    let inv = phi.map.inverse();
    let m = inv.linear();
    let (a, b) = (l.a().to_rational(), l.b().to_rational());
    let a2 = &(&a * &m[0][0]) + &(&b * &m[1][0]);
    let b2 = &(&a * &m[0][1]) + &(&b * &m[1][1]);
    let [t1, t2] = phi.map.translation();
    let c2 = &(l.c() + &(&a2 * t1)) + &(&b2 * t2);
    let d = G::real(Rational::from_integer(common_denominator(
        [&a2.re, &a2.im, &b2.re, &b2.im],
    )));
    let scale = |x: &G| x * &d;
    TorusLine::new(
        &phi.surface,
        scale(&a2).to_integer().expect("cleared denominators"),
        scale(&b2).to_integer().expect("cleared denominators"),
        scale(&c2),
    )
    .expect("image of a nonzero direction is nonzero")
}

/// Least `n` with `phi^n` the identity on the surface.
pub fn auto_order(phi: &AffineAuto) -> AutoOrder {
    let id = IntMatrix::identity(4);
    let mut power = phi.realified.clone();
    let mut k = 1;
    while power != id {
        if k >= MAX_LINEAR_ORDER {
            return AutoOrder::Unbounded;
        }
        power = power.mul(&phi.realified);
        k += 1;
    }
    let shift = phi.pow(k);
    let torsion = shift
        .translation_coords()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    match torsion.to_u64() {
        Some(t) => AutoOrder::Finite(k * t),
        None => AutoOrder::Unbounded,
    }
}

/// The finite group generated by `gens`, identity first, then in
/// breadth-first order of right multiplication by the generators.
pub fn generate_group(
    surface: &Arc<AbelianSurface>,
    gens: &[AffineAuto],
    cap: usize,
) -> Result<Vec<AffineAuto>, TorusError> {
    if gens.iter().any(|g| g.surface != *surface) {
        return Err(TorusError::DifferentSurface);
    }
    let id = AffineAuto::identity(surface);
    let mut seen: BTreeSet<AffineMap> = BTreeSet::from([id.map.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.map.clone()) {
                if out.len() == cap {
                    return Err(TorusError::GroupTooLarge(cap));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeReport {
    Free,
    NotFree {
        element: Box<AffineAuto>,
        witness: Box<TorusPoint>,
    },
}

impl FreeReport {
    pub fn is_free(&self) -> bool {
        matches!(self, FreeReport::Free)
    }
}

/// Checks that `group` is closed and that no non-identity element has a
/// fixed point.
pub fn is_free_action(group: &[AffineAuto]) -> Result<FreeReport, TorusError> {
    check_group(group)?;
    for psi in group.iter().filter(|g| !g.is_identity()) {
        // psi(p) = p on the torus: (N - I) x = -t (mod Z^4).
        let mut a = psi.realified.clone();
        for k in 0..4 {
            a[(k, k)] -= 1;
        }
        let rhs: Vec<Rational> = psi.translation_coords().into_iter().map(|x| -x).collect();
        let x = match solve_torus_congruence(&a, &rhs)? {
            SolutionSet::NoSolution => continue,
            SolutionSet::Finite(xs) => xs.into_iter().next().expect("nonempty"),
            SolutionSet::Positive { particular, .. } => particular,
        };
        let (w, z) = psi.surface.from_coords(&x);
        return Ok(FreeReport::NotFree {
            element: Box::new(psi.clone()),
            witness: Box::new(canonical_point(&w, &z, &psi.surface)),
        });
    }
    Ok(FreeReport::Free)
}

pub(crate) fn check_group(group: &[AffineAuto]) -> Result<(), TorusError> {
    let first = group
        .first()
        .ok_or_else(|| TorusError::NotAGroup("empty element list".into()))?;
    let elems: BTreeSet<&AffineMap> = group.iter().map(|g| &g.map).collect();
    if group.iter().any(|g| g.surface != first.surface) {
        return Err(TorusError::DifferentSurface);
    }
    if elems.len() != group.len() {
        return Err(TorusError::NotAGroup("repeated element".into()));
    }
    if !elems.contains(&AffineMap::identity()) {
        return Err(TorusError::NotAGroup("identity missing".into()));
    }
    for x in group {
        for y in group {
            if !elems.contains(&x.compose(y).map) {
                return Err(TorusError::NotAGroup(format!(
                    "product of {x} and {y} is not in the list"
                )));
            }
        }
    }
    Ok(())
}

/// Orbits of the action restricted to `points`, each sorted, ordered by
/// least member.
pub fn orbit_partition(group: &[AffineAuto], points: &[TorusPoint]) -> Vec<Vec<TorusPoint>> {
    let input: BTreeSet<&TorusPoint> = points.iter().collect();
    let mut owner: BTreeMap<TorusPoint, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<TorusPoint>> = Vec::new();
    for p in &input {
        if owner.contains_key(*p) {
            continue;
        }
        let mut orbit: Vec<TorusPoint> = full_orbit(group, p)
            .into_iter()
            .filter(|q| input.contains(q))
            .collect();
        orbit.sort();
        for q in &orbit {
            owner.insert(q.clone(), orbits.len());
        }
        orbits.push(orbit);
    }
    orbits.sort();
    orbits
}

/// `{g p : g in group}`, sorted and deduplicated.
pub fn full_orbit(group: &[AffineAuto], p: &TorusPoint) -> Vec<TorusPoint> {
    let set: BTreeSet<TorusPoint> = group.iter().map(|g| apply_auto(g, p)).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_gaussian, parse_gaussian_integer};
    use crate::torus::lattice::Lattice2;

    fn g(s: &str) -> G {
        parse_gaussian(s).unwrap()
    }

    fn pt(w: &str, z: &str) -> TorusPoint {
        TorusPoint { w: g(w), z: g(z) }
    }

    fn auto(s: &Arc<AbelianSurface>, m: [&str; 4], t: [&str; 2]) -> AffineAuto {
        AffineAuto::new(AffineMap::from_parts(m.map(g), t.map(g)).unwrap(), s).unwrap()
    }

    fn line(s: &Arc<AbelianSurface>, a: &str, b: &str, c: &str) -> TorusLine {
        TorusLine::new(
            s,
            parse_gaussian_integer(a).unwrap(),
            parse_gaussian_integer(b).unwrap(),
            g(c),
        )
        .unwrap()
    }

    fn gaussian() -> Arc<AbelianSurface> {
        Arc::new(AbelianSurface::gaussian_square())
    }

    fn a_prime() -> Arc<AbelianSurface> {
        Arc::new(AbelianSurface::new(
            Lattice2::gaussian(),
            Lattice2::new(g("4"), g("i")).unwrap(),
        ))
    }

    fn twist(s: &Arc<AbelianSurface>) -> AffineAuto {
        auto(s, ["-1", "0", "0", "1"], ["1/2+1/2*i", "1/2+1/2*i"])
    }

    fn quarter(s: &Arc<AbelianSurface>) -> AffineAuto {
        auto(s, ["i", "0", "0", "1"], ["1/2+1/2*i", "1"])
    }

    #[test]
    fn lattice_preservation_is_checked() {
        let s = gaussian();
        let bad = AffineMap::from_parts(["2", "0", "0", "1"].map(g), ["0", "0"].map(g)).unwrap();
        assert!(matches!(AffineAuto::new(bad, &s), Err(TorusError::NotLatticePreserving(_))));
        // multiplication by i does not preserve Z[4, i]
        let rot = AffineMap::from_parts(["1", "0", "0", "i"].map(g), ["0", "0"].map(g)).unwrap();
        assert!(AffineAuto::new(rot, &a_prime()).is_err());
    }

    #[test]
    fn twist_moves_origin_and_has_order_two() {
        let s = gaussian();
        let phi = twist(&s);
        assert_eq!(apply_auto(&phi, &pt("0", "0")), pt("1/2+1/2*i", "1/2+1/2*i"));
        assert_eq!(auto_order(&phi), AutoOrder::Finite(2));
        assert_eq!(auto_order(&AffineAuto::identity(&s)), AutoOrder::Finite(1));
    }

    #[test]
    fn quarter_turn_on_a_prime() {
        let s = a_prime();
        let phi = quarter(&s);
        assert_eq!(auto_order(&phi), AutoOrder::Finite(4));
        // (i/2 + (1+i)/2, 1/2 + 1) = (1/2 + i, 3/2) reduces to (1/2, 3/2)
        assert_eq!(apply_auto(&phi, &pt("1/2", "1/2")), pt("1/2", "3/2"));
        let group = generate_group(&s, &[phi], 16).unwrap();
        assert_eq!(group.len(), 4);
        assert!(is_free_action(&group).unwrap().is_free());
    }

    #[test]
    fn pure_rotation_fixes_origin() {
        let s = gaussian();
        let flip = auto(&s, ["-1", "0", "0", "1"], ["0", "0"]);
        let group = generate_group(&s, std::slice::from_ref(&flip), 8).unwrap();
        assert_eq!(
            is_free_action(&group).unwrap(),
            FreeReport::NotFree {
                element: Box::new(flip),
                witness: Box::new(pt("0", "0"))
            }
        );
    }

    #[test]
    fn free_twist_and_non_groups() {
        let s = gaussian();
        let phi = twist(&s);
        let group = generate_group(&s, std::slice::from_ref(&phi), 8).unwrap();
        assert!(is_free_action(&group).unwrap().is_free());
        assert!(matches!(is_free_action(std::slice::from_ref(&phi)), Err(TorusError::NotAGroup(_))));
        assert!(matches!(is_free_action(&[]), Err(TorusError::NotAGroup(_))));
        let shift = auto(&s, ["1", "0", "0", "1"], ["1/3", "0"]);
        let not_closed = [AffineAuto::identity(&s), shift];
        assert!(matches!(is_free_action(&not_closed), Err(TorusError::NotAGroup(_))));
    }

    #[test]
    fn irrational_rotation_is_unbounded_order() {
        let s = gaussian();
        let shear = auto(&s, ["1", "1", "0", "1"], ["0", "0"]);
        assert_eq!(auto_order(&shear), AutoOrder::Unbounded);
        assert!(matches!(generate_group(&s, &[shear], 50), Err(TorusError::GroupTooLarge(50))));
    }

    #[test]
    fn images_of_diagonals_and_fibres() {
        let s = gaussian();
        let phi = twist(&s);
        let e1 = line(&s, "1", "-1", "0");
        let e3 = line(&s, "1", "1", "0");
        let f1 = line(&s, "0", "1", "0");
        let f2 = line(&s, "0", "1", "1/2+1/2*i");
        assert_eq!(image_line(&phi, &e1), e3);
        assert_eq!(image_line(&phi, &f1), f2);
        assert_eq!(image_line(&AffineAuto::identity(&s), &e1), e1);
    }

    #[test]
    fn image_respects_incidence() {
        let s = a_prime();
        let phi = quarter(&s);
        let l = line(&s, "1", "-1", "1/2");
        let img = image_line(&phi, &l);
        for (t1, t2) in [(0, 0), (1, 2), (3, 7), (5, 1)] {
            let p = l.point_at(&Rational::new(t1.into(), 9.into()), &Rational::new(t2.into(), 4.into()));
            assert!(img.contains(&apply_auto(&phi, &p)));
        }
    }

    #[test]
    fn orbits_of_diagonal_intersection() {
        let s = gaussian();
        let group = generate_group(&s, &[twist(&s)], 8).unwrap();
        let pts = [pt("0", "0"), pt("1/2", "1/2"), pt("1/2*i", "1/2*i"), pt("1/2+1/2*i", "1/2+1/2*i")];
        let orbits = orbit_partition(&group, &pts);
        assert_eq!(
            orbits,
            vec![
                vec![pt("0", "0"), pt("1/2+1/2*i", "1/2+1/2*i")],
                vec![pt("1/2*i", "1/2*i"), pt("1/2", "1/2")],
            ]
        );
        assert!(orbit_partition(&group, &[]).is_empty());
    }
}
