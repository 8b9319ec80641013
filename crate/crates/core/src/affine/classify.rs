//! The seven abstract groups that act freely on an abelian surface with a
//! bielliptic quotient, told apart by order and element-order counts.

use crate::torus::{generate_group, is_free_action, AbelianSurface, AffineAuto, TorusError, GROUP_CAP};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("group modulo the lattice exceeds {0} elements")]
    NotFinite(usize),
    #[error("group of order {order} with element orders {orders:?} is not a bielliptic type")]
    NotInTable { order: usize, orders: BTreeMap<u64, usize> },
    #[error(transparent)]
    Torus(TorusError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BieType {
    Z2 = 1,
    Z2xZ2 = 2,
    Z4 = 3,
    Z4xZ2 = 4,
    Z3 = 5,
    Z3xZ3 = 6,
    Z6 = 7,
}

impl BieType {
    pub fn tag(self) -> u8 {
        self as u8
    }

    pub fn group_name(self) -> &'static str {
        match self {
            BieType::Z2 => "Z/2",
            BieType::Z2xZ2 => "Z/2 x Z/2",
            BieType::Z4 => "Z/4",
            BieType::Z4xZ2 => "Z/4 x Z/2",
            BieType::Z3 => "Z/3",
            BieType::Z3xZ3 => "Z/3 x Z/3",
            BieType::Z6 => "Z/6",
        }
    }
}

impl fmt::Display for BieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.tag(), self.group_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: BieType,
    pub order: usize,
    /// Advisory observations about the action, not part of the tag.
    pub notes: Vec<String>,
}

fn element_order(g: &AffineAuto) -> u64 {
    let mut x = g.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.compose(g);
        k += 1;
    }
    k
}

/// Matches a finite abelian-or-not group against the table by its order
/// and the number of elements of each order.
pub fn type_from_orders(order: usize, orders: &BTreeMap<u64, usize>) -> Option<BieType> {
    let count = |k: u64| orders.get(&k).copied().unwrap_or(0);
    let max = orders.keys().max().copied().unwrap_or(1);
    match (order, max) {
        (2, 2) => Some(BieType::Z2),
        (3, 3) => Some(BieType::Z3),
        (4, 2) => Some(BieType::Z2xZ2),
        (4, 4) => Some(BieType::Z4),
        (6, 6) => Some(BieType::Z6),
        (8, 4) if count(4) == 4 && count(2) == 3 => Some(BieType::Z4xZ2),
        (9, 3) => Some(BieType::Z3xZ3),
        _ => None,
    }
}

/// Classifies the group generated by `gens` modulo the lattice of `surface`.
pub fn bagnera_classify(gens: &[AffineAuto], surface: &Arc<AbelianSurface>) -> Result<Classification, ClassifyError> {
    let elements = generate_group(surface, gens, GROUP_CAP).map_err(|e| match e {
        TorusError::GroupTooLarge(n) => ClassifyError::NotFinite(n),
        other => ClassifyError::Torus(other),
    })?;
    let mut orders = BTreeMap::new();
    for g in &elements {
        *orders.entry(element_order(g)).or_insert(0) += 1;
    }
    let order = elements.len();
    let kind = type_from_orders(order, &orders).ok_or(ClassifyError::NotInTable { order, orders })?;
    let mut notes = Vec::new();
    match is_free_action(&elements).map_err(ClassifyError::Torus)? {
        r if r.is_free() => notes.push("action is free".to_string()),
        r => notes.push(format!("action is not free: {r:?}")),
    }
    let splits = elements.iter().all(|g| {
        let m = g.map().linear();
        m[0][1].is_zero() && m[1][0].is_zero() && m[1][1] == crate::arith::GaussianRational::one()
    });
    notes.push(if splits {
        "linear parts act on the first factor only".to_string()
    } else {
        "linear parts mix the factors".to_string()
    });
    Ok(Classification { kind, order, notes })
}
