//! File formats, configuration, the result catalog and the subcommands of `rrbg`.

pub mod commands;
pub mod config;
pub mod format;
pub mod record;

use thiserror::Error;

use rrbg::brace::BraceError;
use rrbg::cohomology::CohomologyError;
use rrbg::group::GroupError;
use rrbg::isoclinism::IsoclinismError;
use rrbg::rrb::RrbError;
use rrbg::schur::SchurError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("validation failed: {0}")]
    Validation(String),
    /// an oracle or a checked identity disagrees with the computation
    #[error("violation: {0}")]
    Violation(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("{0}")]
    Library(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Violation(_) | CliError::Library(_) => 3,
            CliError::BoundExceeded(_) => 4,
        }
    }
}

fn group_bound(e: &GroupError) -> bool {
    matches!(e, GroupError::SearchBoundExceeded { .. })
}

fn rrb_bound(e: &RrbError) -> bool {
    matches!(e, RrbError::Group(g) if group_bound(g))
}

fn cohomology_bound(e: &CohomologyError) -> bool {
    match e {
        CohomologyError::SearchBoundExceeded { .. } => true,
        CohomologyError::Group(g) => group_bound(g),
        CohomologyError::Rrb(r) => rrb_bound(r),
        _ => false,
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        let bound = match &e {
            SchurError::Cohomology(c) => cohomology_bound(c),
            SchurError::Rrb(r) => rrb_bound(r),
            SchurError::Group(g) => group_bound(g),
            _ => false,
        };
        if bound { CliError::BoundExceeded(e.to_string()) } else { CliError::Library(e.to_string()) }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        if cohomology_bound(&e) { CliError::BoundExceeded(e.to_string()) } else { CliError::Library(e.to_string()) }
    }
}

impl From<IsoclinismError> for CliError {
    fn from(e: IsoclinismError) -> Self {
        let bound = match &e {
            IsoclinismError::Rrb(r) => rrb_bound(r),
            IsoclinismError::Group(g) => group_bound(g),
            IsoclinismError::WitnessInvalid(_) => false,
        };
        if bound { CliError::BoundExceeded(e.to_string()) } else { CliError::Violation(e.to_string()) }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        if group_bound(&e) { CliError::BoundExceeded(e.to_string()) } else { CliError::Library(e.to_string()) }
    }
}

impl From<BraceError> for CliError {
    fn from(e: BraceError) -> Self {
        match &e {
            BraceError::Group(g) if group_bound(g) => CliError::BoundExceeded(e.to_string()),
            BraceError::BraidFails(..) | BraceError::DegenerateComponent(_) => CliError::Violation(e.to_string()),
            _ => CliError::Library(e.to_string()),
        }
    }
}
