//! Second cohomology of groups, skew braces and RRB groups with trivial
//! coefficients, extensions, and the maps between these theories.

use thiserror::Error;

use crate::group::GroupError;
use crate::linalg::LinalgError;
use crate::rrb::RrbError;

pub mod cocycle;
pub mod extension;
pub mod gcoh;
pub mod h2;
pub mod hss;
pub mod module;
pub mod pi;
pub mod product;

pub use cocycle::{h2_rrb, is_rrb_cocycle, rrb_coboundary, Cocycle4, RrbH2, RrbLayout};
pub use extension::{cocycle_from_extension, extension_from_cocycle, extension_oracle, ExtensionData, Section};
pub use gcoh::{h2_group, h2_slb, GroupCocycle, GroupLayout, SlbCocycle, SlbLayout};
pub use h2::{coboundary, first_violation, CochainLayout, Condition, H2Classes, Residual, Site, DEFAULT_VARIABLE_BOUND};
pub use module::{CyclicProduct, TrivialModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cochain is not normalized: {0}")]
    NotNormalized(String),
    #[error("not a cocycle: {0:?} fails")]
    NotACocycle(Site),
    #[error("{what} has size {size}, above the bound {bound}")]
    SearchBoundExceeded { what: &'static str, size: usize, bound: usize },
    #[error("linear conditions say {linear}, extension construction says {oracle}: {detail}")]
    Consistency { linear: bool, oracle: bool, detail: String },
    #[error("invalid section: {0}")]
    SectionInvalid(String),
    #[error("class is not in the cocycle group: {0}")]
    NotInZ2(String),
    #[error("{0}")]
    Violation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rrb(#[from] RrbError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
