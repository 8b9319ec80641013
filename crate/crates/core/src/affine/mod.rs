//! Exact affine transformations of `C^2` and checks of group presentations
//! realized by them.

mod classify;
mod map;
mod spec;

pub use classify::{bagnera_classify, type_from_orders, BieType, ClassifyError, Classification};
pub use map::{compose, AffineError, AffineMap};
pub use spec::{
    load_affine_spec, load_substitution, parse_affine_file, verify_presentation, verify_substitution, AffineFile,
    AffineGroupSpec, AffineSpecError, EqualityMode, RelationReport, RelatorCheck, Substitution,
};
