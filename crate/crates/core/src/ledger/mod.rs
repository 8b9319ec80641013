//! Bookkeeping for curves on blown-up surfaces: proper transforms,
//! logarithmic Chern numbers, and the numerical tests a ball quotient
//! compactification has to pass.

mod chern;
mod format;
mod synth;

pub use chern::{
    ample_threshold, ample_threshold_of, char_numbers, disjointness_check, log_chern,
    log_chern_parts, parity_check, proper_transform_selfint, proportionality_check, CharNumbers,
    CurveClass, DisjointnessWitness, LogChernParts, LogChernReport, ProportionalityStatus,
    ProportionalityVerdict,
};
pub use format::{format_ledger, parse_ledger};
pub use synth::{ledger_from_quotient, pullback_intersection, selfint_via_pullback};

use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Genus {
    Elliptic,
    Rational,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Genus::Elliptic => "elliptic",
            Genus::Rational => "rational",
        })
    }
}

/// A curve on the base surface. `self_int` is the self-intersection on the
/// base; proper transforms are derived from the blown points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub name: String,
    pub self_int: BigInt,
    pub genus: Genus,
    /// Branch count at each marked point it passes through.
    pub mults: BTreeMap<String, u32>,
}

impl CurveRecord {
    pub fn mult_at(&self, point: &str) -> u32 {
        self.mults.get(point).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Abelian,
    Bielliptic(u32),
    Explicit { k2: BigInt, e: BigInt },
}

impl Base {
    pub fn k2(&self) -> BigInt {
        match self {
            Base::Explicit { k2, .. } => k2.clone(),
            _ => BigInt::from(0),
        }
    }

    pub fn euler(&self) -> BigInt {
        match self {
            Base::Explicit { e, .. } => e.clone(),
            _ => BigInt::from(0),
        }
    }

    /// Abelian and bielliptic surfaces have numerically trivial canonical
    /// class, so `K` of a blowup is the sum of the exceptional curves.
    pub fn k_trivial(&self) -> bool {
        !matches!(self, Base::Explicit { .. })
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Abelian => write!(f, "abelian"),
            Base::Bielliptic(n) => write!(f, "bielliptic:{n}"),
            Base::Explicit { k2, e } => write!(f, "explicit:{k2},{e}"),
        }
    }
}

/// A base surface, a set of blown points and curves through them, and the
/// boundary divisor among those curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupLedger {
    pub base: Base,
    pub blown: Vec<String>,
    pub curves: Vec<CurveRecord>,
    pub boundary: Vec<String>,
    /// Intersection numbers on the base, when known, keyed by name pair in
    /// ascending order. Missing pairs are assumed to meet only at marked
    /// points.
    pub meets: BTreeMap<(String, String), BigInt>,
    /// Optional human-readable description of each marked point.
    pub labels: BTreeMap<String, String>,
}

impl BlowupLedger {
    pub fn new(base: Base) -> Self {
        BlowupLedger {
            base,
            blown: Vec::new(),
            curves: Vec::new(),
            boundary: Vec::new(),
            meets: BTreeMap::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn curve(&self, name: &str) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn is_blown(&self, point: &str) -> bool {
        self.blown.iter().any(|p| p == point)
    }

    pub fn boundary_curves(&self) -> Result<Vec<&CurveRecord>, LedgerError> {
        self.boundary
            .iter()
            .map(|n| self.curve(n).ok_or_else(|| LedgerError::UnknownCurve(n.clone())))
            .collect()
    }

    /// Self-intersection of the proper transform of `curve`.
    pub fn proper_selfint(&self, curve: &CurveRecord) -> BigInt {
        let mults: Vec<u32> = self
            .blown
            .iter()
            .map(|p| curve.mult_at(p))
            .filter(|&m| m > 0)
            .collect();
        proper_transform_selfint(&curve.self_int, &mults)
    }

    /// Self-intersection of `curve` after blowing up `points`, each of
    /// which must already be in the blown set.
    pub fn transform_at(&self, curve: &str, points: &[&str]) -> Result<BigInt, LedgerError> {
        let c = self
            .curve(curve)
            .ok_or_else(|| LedgerError::UnknownCurve(curve.to_string()))?;
        let mut mults = Vec::with_capacity(points.len());
        for p in points {
            if !self.is_blown(p) {
                return Err(LedgerError::UnblownPoint(p.to_string()));
            }
            mults.push(c.mult_at(p));
        }
        Ok(proper_transform_selfint(&c.self_int, &mults))
    }

    /// Each exceptional curve with the transversal intersection pattern it
    /// has with the boundary: one `1` per boundary branch through its point.
    pub fn exceptional_records(&self) -> Result<Vec<(String, Vec<u32>)>, LedgerError> {
        self.blown
            .iter()
            .map(|p| Ok((p.clone(), vec![1; self.boundary_mult(p)? as usize])))
            .collect()
    }

    /// Total multiplicity of the boundary at a point.
    pub fn boundary_mult(&self, point: &str) -> Result<u32, LedgerError> {
        Ok(self.boundary_curves()?.iter().map(|c| c.mult_at(point)).sum())
    }

    /// Base intersection number of two distinct curves.
    pub fn base_meet(&self, c1: &CurveRecord, c2: &CurveRecord) -> BigInt {
        let key = if c1.name <= c2.name {
            (c1.name.clone(), c2.name.clone())
        } else {
            (c2.name.clone(), c1.name.clone())
        };
        if let Some(v) = self.meets.get(&key) {
            return v.clone();
        }
        c1.mults
            .iter()
            .map(|(p, m)| BigInt::from(*m) * BigInt::from(c2.mult_at(p)))
            .sum()
    }

    /// Adds a blown point; rejects repeats.
    pub fn blow(&mut self, point: impl Into<String>) -> Result<(), LedgerError> {
        let point = point.into();
        if self.is_blown(&point) {
            return Err(LedgerError::RepeatedPoint(point));
        }
        self.blown.push(point);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), LedgerError> {
        for (i, p) in self.blown.iter().enumerate() {
            if self.blown[..i].contains(p) {
                return Err(LedgerError::RepeatedPoint(p.clone()));
            }
        }
        for (i, c) in self.curves.iter().enumerate() {
            if self.curves[..i].iter().any(|d| d.name == c.name) {
                return Err(LedgerError::DuplicateCurve(c.name.clone()));
            }
            if let Some((p, _)) = c.mults.iter().find(|(_, &m)| m == 0) {
                return Err(LedgerError::ZeroMultiplicity {
                    curve: c.name.clone(),
                    point: p.clone(),
                });
            }
        }
        for (i, b) in self.boundary.iter().enumerate() {
            if self.boundary[..i].contains(b) {
                return Err(LedgerError::DuplicateCurve(b.clone()));
            }
        }
        self.boundary_curves()?;
        Ok(())
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("curve {0} is listed twice")]
    DuplicateCurve(String),
    #[error("point {0} is blown up twice")]
    RepeatedPoint(String),
    #[error("curve {curve} has multiplicity 0 at {point}")]
    ZeroMultiplicity { curve: String, point: String },
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("point {0} is not blown up")]
    UnblownPoint(String),
    #[error("boundary is not a disjoint union of smooth curves: {0}")]
    NotDisjoint(DisjointnessWitness),
    #[error("boundary component {0} is rational")]
    RationalBoundary(String),
    #[error("adjunction fails for {curve}: K.C = {kc} but -C^2 = {minus_c2}")]
    AdjunctionMismatch {
        curve: String,
        kc: BigInt,
        minus_c2: BigInt,
    },
    #[error("pullback self-intersection {total} of {curve} is not divisible by {order}")]
    NonIntegralSelfIntersection {
        curve: String,
        total: BigInt,
        order: usize,
    },
    #[error("Noether's formula gives non-integral chi = {0}/12")]
    NonIntegralChi(BigInt),
    #[error("curve class with K.C = {kc} and D.C = {dc} has no positive threshold")]
    DegenerateClass { kc: BigInt, dc: BigInt },
    #[error(transparent)]
    Torus(#[from] crate::torus::TorusError),
}
