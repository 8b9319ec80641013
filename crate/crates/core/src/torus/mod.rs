//! Abelian surfaces `C^2 / (lambda1 x lambda2)` over Gaussian lattices,
//! linear curves on them, affine automorphisms and free quotients.

mod auto;
mod format;
mod lattice;
mod line;
mod quotient;

pub use auto::{
    apply_auto, auto_order, full_orbit, generate_group, image_line, is_free_action,
    orbit_partition, AffineAuto, AutoOrder, FreeReport,
};
pub use format::{parse_arrangement_file, parse_surface_line, ArrangementFile};
pub(crate) use format::parse_map_fields;
pub use lattice::{canonical_point, AbelianSurface, Lattice2, TorusPoint};
pub use line::{intersect_lines, intersection_number, TorusLine};
pub use quotient::{
    build_quotient_config, fiber, translate_arrangement, Arrangement, ImageCurve, NamedLine,
    QuotientConfig, SpecialPoint,
};

use crate::arith::CongruenceError;

/// Upper bound on the size of a generated automorphism group.
pub const GROUP_CAP: usize = 4096;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("lattice basis is linearly dependent over R")]
    DegenerateLattice,
    #[error("line has a = b = 0")]
    ZeroDirection,
    #[error("both arguments are the curve {0}")]
    SameCurve(String),
    #[error("objects live on different surfaces")]
    DifferentSurface,
    #[error("{0} does not preserve the lattice")]
    NotLatticePreserving(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("generated group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("action is not free: {element} fixes {witness}")]
    NotFreeAction { element: String, witness: Box<TorusPoint> },
    #[error("arrangement is not stable: the image of {line} under {element} is missing")]
    NotStable { line: String, element: String },
    #[error("two branches share a tangent direction at {0}")]
    NonOrdinarySingularity(Box<TorusPoint>),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("lines {0} and {1} are the same curve")]
    DuplicateLine(String, String),
    #[error("unknown line {0}")]
    UnknownLine(String),
    #[error("declared image curve {0} is not a line orbit")]
    ImageMismatch(String),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}
