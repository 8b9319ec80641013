use super::{BlowupLedger, Genus, LedgerError};
use crate::arith::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `C^2 - sum m_i^2`.
pub fn proper_transform_selfint(c_sq: &BigInt, mults: &[u32]) -> BigInt {
    mults
        .iter()
        .fold(c_sq.clone(), |acc, &m| acc - BigInt::from(m) * BigInt::from(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisjointnessWitness {
    /// Two boundary components still meet after the blowups.
    Meet {
        first: String,
        second: String,
        remaining: BigInt,
    },
    /// A boundary component keeps a singular point that was not blown up.
    Singular { curve: String, point: String, mult: u32 },
}

impl fmt::Display for DisjointnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisjointnessWitness::Meet {
                first,
                second,
                remaining,
            } => write!(f, "{first} and {second} still meet with multiplicity {remaining}"),
            DisjointnessWitness::Singular { curve, point, mult } => {
                write!(f, "{curve} has an unblown point {point} of multiplicity {mult}")
            }
        }
    }
}

/// Checks that the proper transforms of the boundary curves are smooth and
/// pairwise disjoint, returning the first failure.
pub fn disjointness_check(ledger: &BlowupLedger) -> Result<Result<(), DisjointnessWitness>, LedgerError> {
    let bd = ledger.boundary_curves()?;
    for c in &bd {
        if let Some((p, &m)) = c.mults.iter().find(|(p, &m)| m >= 2 && !ledger.is_blown(p)) {
            return Ok(Err(DisjointnessWitness::Singular {
                curve: c.name.clone(),
                point: p.clone(),
                mult: m,
            }));
        }
    }
    for (i, c1) in bd.iter().enumerate() {
        for c2 in &bd[i + 1..] {
            let removed: BigInt = ledger
                .blown
                .iter()
                .map(|p| BigInt::from(c1.mult_at(p)) * BigInt::from(c2.mult_at(p)))
                .sum();
            let remaining = ledger.base_meet(c1, c2) - removed;
            if !remaining.is_zero() {
                return Ok(Err(DisjointnessWitness::Meet {
                    first: c1.name.clone(),
                    second: c2.name.clone(),
                    remaining,
                }));
            }
        }
    }
    Ok(Ok(()))
}

/// The pieces of `(K + D)^2` and `e(X - D)` before any consistency checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogChernParts {
    pub k2: BigInt,
    pub kd: BigInt,
    pub d2: BigInt,
    pub euler: BigInt,
}

impl LogChernParts {
    pub fn c1sq(&self) -> BigInt {
        &self.k2 + BigInt::from(2) * &self.kd + &self.d2
    }
}

/// `K^2`, `K.D`, `D^2` and the Euler number of the blown-up surface.
///
/// `K.D` is read off the exceptional curves when the base has trivial
/// canonical class and from adjunction (`K.C = -C^2` on a smooth elliptic
/// curve) otherwise.
pub fn log_chern_parts(ledger: &BlowupLedger) -> Result<LogChernParts, LedgerError> {
    let n = BigInt::from(ledger.blown.len());
    let bd = ledger.boundary_curves()?;
    let d2: BigInt = bd.iter().map(|c| ledger.proper_selfint(c)).sum();
    let kd = if ledger.base.k_trivial() {
        let mut total = BigInt::zero();
        for p in &ledger.blown {
            total += ledger.boundary_mult(p)?;
        }
        total
    } else {
        -&d2
    };
    Ok(LogChernParts {
        k2: ledger.base.k2() - &n,
        kd,
        d2,
        euler: ledger.base.euler() + n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogChernReport {
    pub c1sq_log: BigInt,
    pub c2_log: BigInt,
    pub bmy_equal: bool,
    pub cusp_count: usize,
    pub parts: LogChernParts,
    pub notes: Vec<String>,
}

pub fn log_chern(ledger: &BlowupLedger) -> Result<LogChernReport, LedgerError> {
    ledger.validate()?;
    let bd = ledger.boundary_curves()?;
    if let Some(c) = bd.iter().find(|c| c.genus == Genus::Rational) {
        return Err(LedgerError::RationalBoundary(c.name.clone()));
    }
    if let Err(w) = disjointness_check(ledger)? {
        return Err(LedgerError::NotDisjoint(w));
    }
    if ledger.base.k_trivial() {
        // Smooth elliptic boundary: K.C must equal -C^2 curve by curve.
        for c in &bd {
            let kc: BigInt = ledger.blown.iter().map(|p| BigInt::from(c.mult_at(p))).sum();
            let minus_c2 = -ledger.proper_selfint(c);
            if kc != minus_c2 {
                return Err(LedgerError::AdjunctionMismatch {
                    curve: c.name.clone(),
                    kc,
                    minus_c2,
                });
            }
        }
    }
    let parts = log_chern_parts(ledger)?;
    let c1sq_log = parts.c1sq();
    // every boundary component is elliptic, so removing it leaves e unchanged
    let c2_log = parts.euler.clone();
    let bmy_equal = c1sq_log == BigInt::from(3) * &c2_log;
    Ok(LogChernReport {
        bmy_equal,
        c1sq_log,
        c2_log,
        cusp_count: bd.len(),
        parts,
        notes: vec!["ball quotient conclusion assumes K + D is nef and big (not certified)".into()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProportionalityStatus {
    Strict,
    EqualityTotallyGeodesic,
    Violated,
}

impl fmt::Display for ProportionalityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProportionalityStatus::Strict => "strict",
            ProportionalityStatus::EqualityTotallyGeodesic => "equality_totally_geodesic",
            ProportionalityStatus::Violated => "violated",
        })
    }
}

/// `3 C^2` against `-K.C + sum (2 m_i - 3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProportionalityVerdict {
    pub status: ProportionalityStatus,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl ProportionalityVerdict {
    /// Genus from adjunction, `g = 1 + (K.C + C^2) / 2`.
    pub fn genus(c_sq: &BigInt, k_dot_c: &BigInt) -> Rational {
        Rational::from_integer(BigInt::from(1)) + Rational::new(k_dot_c + c_sq, BigInt::from(2))
    }

    /// The same comparison in the form `3 (g - 1) + k/2` against `K.C`, for
    /// a curve meeting the boundary transversally in `k` points.
    pub fn genus_form(c_sq: &BigInt, k_dot_c: &BigInt, k: usize) -> (Rational, Rational) {
        let g1 = Self::genus(c_sq, k_dot_c) - Rational::from_integer(BigInt::from(1));
        let lhs = g1 * Rational::from_integer(BigInt::from(3))
            + Rational::new(BigInt::from(k), BigInt::from(2));
        (lhs, Rational::from_integer(k_dot_c.clone()))
    }
}

/// Evaluates the relative proportionality inequality for a curve `C` not in
/// the boundary meeting it with multiplicities `mults`. An empty list is a
/// curve disjoint from the boundary.
pub fn proportionality_check(c_sq: &BigInt, k_dot_c: &BigInt, mults: &[u32]) -> ProportionalityVerdict {
    let lhs = BigInt::from(3) * c_sq;
    let rhs = mults
        .iter()
        .fold(-k_dot_c, |acc, &m| acc + BigInt::from(2 * i64::from(m) - 3));
    let status = match lhs.cmp(&rhs) {
        Ordering::Greater => ProportionalityStatus::Strict,
        Ordering::Equal => ProportionalityStatus::EqualityTotallyGeodesic,
        Ordering::Less => ProportionalityStatus::Violated,
    };
    ProportionalityVerdict { status, lhs, rhs }
}

/// A totally geodesic curve has an even number of cusps.
pub fn parity_check(k: usize) -> bool {
    k.is_multiple_of(2)
}

/// Intersection numbers of a curve with `K` and with the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    pub k_dot: BigInt,
    pub d_dot: BigInt,
}

impl CurveClass {
    pub fn new(k_dot: i64, d_dot: i64) -> Self {
        CurveClass {
            k_dot: k_dot.into(),
            d_dot: d_dot.into(),
        }
    }
}

/// The least `alpha` such that `(K + alpha D).C > 0` for every class with
/// `alpha` above it, or `None` if every class is already positive on `K`.
pub fn ample_threshold_of(classes: &[CurveClass]) -> Result<Option<Rational>, LedgerError> {
    let mut best: Option<Rational> = None;
    for c in classes {
        if c.k_dot.is_positive() {
            continue;
        }
        if !c.d_dot.is_positive() {
            return Err(LedgerError::DegenerateClass {
                kc: c.k_dot.clone(),
                dc: c.d_dot.clone(),
            });
        }
        let alpha = Rational::new(-&c.k_dot, c.d_dot.clone());
        if best.as_ref().is_none_or(|b| alpha > *b) {
            best = Some(alpha);
        }
    }
    Ok(best)
}

/// Threshold over the exceptional curves of `ledger` (each has `K.E = -1`
/// and `D.E` the boundary multiplicity at its point) and `extra`.
pub fn ample_threshold(ledger: &BlowupLedger, extra: &[CurveClass]) -> Result<Option<Rational>, LedgerError> {
    let mut classes = Vec::with_capacity(ledger.blown.len() + extra.len());
    for p in &ledger.blown {
        classes.push(CurveClass {
            k_dot: BigInt::from(-1),
            d_dot: BigInt::from(ledger.boundary_mult(p)?),
        });
    }
    classes.extend_from_slice(extra);
    ample_threshold_of(&classes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharNumbers {
    pub k2: BigInt,
    pub chi: BigInt,
    pub p_g: BigInt,
}

/// Characteristic numbers of a smooth compactification with log-BMY
/// equality: `K^2 = 3e + D^2`, Noether `chi = (K^2 + e) / 12`, and
/// `p_g = chi - 1 + q`.
pub fn char_numbers(e: &BigInt, boundary_self_ints: &[BigInt], q: &BigInt) -> Result<CharNumbers, LedgerError> {
    let d2: BigInt = boundary_self_ints.iter().sum();
    let k2 = BigInt::from(3) * e + d2;
    let (chi, rem) = (&k2 + e).div_rem(&BigInt::from(12));
    if !rem.is_zero() {
        return Err(LedgerError::NonIntegralChi(&k2 + e));
    }
    let p_g = &chi - 1 + q;
    Ok(CharNumbers { k2, chi, p_g })
}
