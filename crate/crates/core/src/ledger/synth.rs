use super::{Base, BlowupLedger, CurveRecord, Genus, LedgerError};
use crate::torus::{QuotientConfig, TorusError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

fn curve_idx(config: &QuotientConfig, name: &str) -> Result<usize, LedgerError> {
    config
        .curve_index(name)
        .ok_or_else(|| LedgerError::UnknownCurve(name.to_string()))
}

fn divide(config: &QuotientConfig, name: &str, total: BigInt) -> Result<BigInt, LedgerError> {
    let order = config.group_order();
    let (q, r) = total.div_rem(&BigInt::from(order));
    if !r.is_zero() {
        return Err(LedgerError::NonIntegralSelfIntersection {
            curve: name.to_string(),
            total,
            order,
        });
    }
    Ok(q)
}

/// `G^2 = (pi^* G)^2 / |group|` for an image curve of an unramified quotient.
pub fn selfint_via_pullback(config: &QuotientConfig, name: &str) -> Result<BigInt, LedgerError> {
    let i = curve_idx(config, name)?;
    divide(config, name, config.pullback_product(i, i)?)
}

/// `G . G' = pi^* G . pi^* G' / |group|`.
pub fn pullback_intersection(config: &QuotientConfig, first: &str, second: &str) -> Result<BigInt, LedgerError> {
    let i = curve_idx(config, first)?;
    let j = curve_idx(config, second)?;
    let name = format!("{first}.{second}");
    divide(config, &name, config.pullback_product(i, j)?)
}

/// A ledger for the quotient surface with every image curve in the
/// boundary. Special points are named `p1, p2, ...` in the order of
/// [`QuotientConfig::special_points`]. `blow` selects points to blow up by
/// id; `None` blows up all of them.
pub fn ledger_from_quotient(config: &QuotientConfig, blow: Option<&[String]>) -> Result<BlowupLedger, LedgerError> {
    let base = if config.group().iter().all(|g| g.map().linear_is_identity()) {
        Base::Abelian
    } else {
        let n = u32::try_from(config.group_order()).map_err(|_| TorusError::GroupTooLarge(config.group_order()))?;
        Base::Bielliptic(n)
    };
    let mut ledger = BlowupLedger::new(base);
    let ids: Vec<String> = (1..=config.special_points().len()).map(|k| format!("p{k}")).collect();
    let mut mults: Vec<BTreeMap<String, u32>> = vec![BTreeMap::new(); config.image_curves().len()];
    for (id, p) in ids.iter().zip(config.special_points()) {
        ledger.labels.insert(id.clone(), p.representative.to_string());
        for &(c, m) in &p.branches {
            mults[c].insert(id.clone(), m);
        }
    }
    let curves = config.image_curves();
    for (c, m) in curves.iter().zip(mults) {
        ledger.curves.push(CurveRecord {
            name: c.name.clone(),
            self_int: selfint_via_pullback(config, &c.name)?,
            genus: Genus::Elliptic,
            mults: m,
        });
        ledger.boundary.push(c.name.clone());
    }
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            let v = pullback_intersection(config, &a.name, &b.name)?;
            let (x, y) = if a.name <= b.name { (&a.name, &b.name) } else { (&b.name, &a.name) };
            ledger.meets.insert((x.clone(), y.clone()), v);
        }
    }
    match blow {
        None => {
            for id in ids {
                ledger.blow(id)?;
            }
        }
        Some(sel) => {
            for id in sel {
                if !ids.contains(id) {
                    return Err(LedgerError::UnknownPoint(id.clone()));
                }
                ledger.blow(id.clone())?;
            }
        }
    }
    Ok(ledger)
}
