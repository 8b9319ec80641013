//! Finitely presented groups: words, presentations, coset enumeration,
//! permutation images and abelian invariants.

mod abelian;
mod coset;
mod homs;
mod images;
mod perm;
mod presentation;
mod word;

pub use abelian::{abelianization, euler_cover, subgroup_abelianization, subgroup_abelianization_from_table, AbelianInvariants};
pub use coset::{max_cosets_from_env, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
pub use homs::{find_homomorphisms, find_homomorphisms_in, ElementTable, HomOptions, HomSearch};
pub use images::{format_image_file, parse_image_file, parse_perm, ImageFile};
pub use perm::{
    coset_index_of_image_subgroup, evaluate, group_order, kernel_membership, regular_actions, verify_finite_image, FiniteImage, Perm,
    StabChain,
};
pub use presentation::{parse_group_file, parse_presentation, GroupFile, Presentation, PresentationError};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("coset enumeration exceeded {0} cosets")]
    BoundExceeded(usize),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("generator images have different degrees")]
    DegreeMismatch,
    #[error("relator {} is not satisfied by the images", .0 + 1)]
    RelatorFails(usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
