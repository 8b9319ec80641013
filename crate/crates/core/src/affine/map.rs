use crate::arith::GaussianRational;
use num_traits::{Signed, Zero};
use std::fmt;

type G = GaussianRational;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("linear part is singular")]
    Singular,
}

/// `(w, z) -> M (w, z) + t` over `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    linear: [[G; 2]; 2],
    translation: [G; 2],
}

impl AffineMap {
    pub fn new(linear: [[G; 2]; 2], translation: [G; 2]) -> Result<Self, AffineError> {
        let map = AffineMap {
            linear,
            translation,
        };
        if map.det().is_zero() {
            return Err(AffineError::Singular);
        }
        Ok(map)
    }

    /// Row-major linear entries then the translation, as in the file formats.
    pub fn from_parts(m: [G; 4], t: [G; 2]) -> Result<Self, AffineError> {
        let [m11, m12, m21, m22] = m;
        Self::new([[m11, m12], [m21, m22]], t)
    }

    pub fn identity() -> Self {
        AffineMap {
            linear: [[G::one(), G::zero()], [G::zero(), G::one()]],
            translation: [G::zero(), G::zero()],
        }
    }

    pub fn translation_by(t1: G, t2: G) -> Self {
        AffineMap {
            translation: [t1, t2],
            ..Self::identity()
        }
    }

    pub fn linear(&self) -> &[[G; 2]; 2] {
        &self.linear
    }

    pub fn translation(&self) -> &[G; 2] {
        &self.translation
    }

    pub fn det(&self) -> G {
        let m = &self.linear;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn linear_is_identity(&self) -> bool {
        self.linear == Self::identity().linear
    }

    /// `M v` without the translation.
    pub fn apply_linear(&self, w: &G, z: &G) -> [G; 2] {
        let m = &self.linear;
        [
            &(&m[0][0] * w) + &(&m[0][1] * z),
            &(&m[1][0] * w) + &(&m[1][1] * z),
        ]
    }

    pub fn apply(&self, w: &G, z: &G) -> [G; 2] {
        let [a, b] = self.apply_linear(w, z);
        [&a + &self.translation[0], &b + &self.translation[1]]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &AffineMap) -> AffineMap {
        let a = &self.linear;
        let b = &g.linear;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        AffineMap {
            linear: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            translation: self.apply(&g.translation[0], &g.translation[1]),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let d = self.det().inv().expect("linear part is invertible");
        let m = &self.linear;
        let linear = [
            [&m[1][1] * &d, -(&m[0][1] * &d)],
            [-(&m[1][0] * &d), &m[0][0] * &d],
        ];
        let partial = AffineMap {
            linear,
            translation: [G::zero(), G::zero()],
        };
        let [t1, t2] = partial.apply_linear(&self.translation[0], &self.translation[1]);
        AffineMap {
            translation: [-t1, -t2],
            ..partial
        }
    }

    /// `self^n`, negative exponents allowed.
    pub fn pow(&self, n: i64) -> AffineMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }
}

/// `f ∘ g`.
pub fn compose(f: &AffineMap, g: &AffineMap) -> AffineMap {
    f.compose(g)
}

fn write_component(f: &mut fmt::Formatter<'_>, coeffs: [&G; 2], t: &G) -> fmt::Result {
    let mut wrote = false;
    for (c, var) in coeffs.into_iter().zip(["w", "z"]) {
        if c.is_zero() {
            continue;
        }
        let neg = -c;
        let (sign, mag) = if c.im.is_zero() && c.re.is_negative() {
            ("-", &neg)
        } else {
            ("+", c)
        };
        if wrote {
            write!(f, " {sign} ")?;
        } else if sign == "-" {
            write!(f, "-")?;
        }
        if *mag == G::one() {
            write!(f, "{var}")?;
        } else if mag.re.is_zero() || mag.im.is_zero() {
            write!(f, "{mag}*{var}")?;
        } else {
            write!(f, "({mag})*{var}")?;
        }
        wrote = true;
    }
    if !t.is_zero() || !wrote {
        if wrote {
            write!(f, " + ({t})")?;
        } else {
            write!(f, "{t}")?;
        }
    }
    Ok(())
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.linear;
        write!(f, "(w, z) -> (")?;
        write_component(f, [&m[0][0], &m[0][1]], &self.translation[0])?;
        write!(f, ", ")?;
        write_component(f, [&m[1][0], &m[1][1]], &self.translation[1])?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_gaussian;
    use proptest::prelude::*;

    fn g(s: &str) -> G {
        parse_gaussian(s).unwrap()
    }

    fn map(m: [&str; 4], t: [&str; 2]) -> AffineMap {
        AffineMap::from_parts(m.map(g), t.map(g)).unwrap()
    }

    #[test]
    fn fourth_power_of_rotation_is_unit_shift() {
        let e = map(["i", "0", "0", "1"], ["0", "1/4"]);
        let c = AffineMap::translation_by(G::zero(), G::one());
        assert_eq!(e.compose(&e).compose(&e).compose(&e), c);
        assert_eq!(e.pow(4), c);
        assert_eq!(e.pow(-4), c.inverse());
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            AffineMap::from_parts(["1", "1", "1", "1"].map(g), ["0", "0"].map(g)),
            Err(AffineError::Singular)
        );
    }

    #[test]
    fn display_is_readable() {
        let phi = map(["-1", "0", "0", "1"], ["1/2+1/2*i", "1/2+1/2*i"]);
        assert_eq!(phi.to_string(), "(w, z) -> (-w + (1/2+1/2*i), z + (1/2+1/2*i))");
        assert_eq!(AffineMap::identity().to_string(), "(w, z) -> (w, z)");
        let r = map(["i", "0", "0", "1"], ["0", "0"]);
        assert_eq!(r.to_string(), "(w, z) -> (i*w, z)");
    }

    fn small_g() -> impl Strategy<Value = G> {
        (-3i64..4, -3i64..4, 1i64..4).prop_map(|(a, b, d)| G::frac(a, d, b, d))
    }

    fn small_map() -> impl Strategy<Value = AffineMap> {
        (proptest::array::uniform4(small_g()), proptest::array::uniform2(small_g()))
            .prop_filter_map("singular", |(m, t)| AffineMap::from_parts(m, t).ok())
    }

    proptest! {
        #[test]
        fn composition_is_associative(f in small_map(), g in small_map(), h in small_map()) {
            prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        }

        #[test]
        fn inverse_cancels(f in small_map()) {
            prop_assert!(f.inverse().compose(&f).is_identity());
            prop_assert!(f.compose(&f.inverse()).is_identity());
        }
    }
}
