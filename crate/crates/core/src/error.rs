use thiserror::Error;

use crate::algebra::AlgebraTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra tag mismatch: {0} vs {1}")]
    TagMismatch(AlgebraTag, AlgebraTag),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("Jordan product left the Hermitian matrices: {0}")]
    HermiticityBroken(String),
    #[error("element is not traceless")]
    NotTraceless,
    #[error("torus element must satisfy l1*l2*l3 = 1 with all li nonzero")]
    TorusConstraint,
    #[error("(t, A) = (0, 0) has no image in projective space")]
    ZeroInput,
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("module selection is ambiguous: {0} candidates")]
    Ambiguous(usize),
    #[error("no candidate module of dimension {0}")]
    NoCandidate(usize),
    #[error("all points are collinear")]
    Degenerate,
    #[error("invalid fan corner {index} for a fan with {len} rays")]
    InvalidCorner { index: usize, len: usize },
    #[error("fan is not smooth and complete: {0}")]
    NotSmooth(String),
    #[error("unknown divisor label {0:?}")]
    UnknownLabel(String),
    #[error("{0:?} is not a solution of the anticanonical coefficient system")]
    InvalidSolution([u32; 6]),
    #[error("invalid blowup location: {0}")]
    InvalidLocation(String),
    #[error("action {0:?} is not an isometry of the intersection form")]
    NotIsometry(String),
    #[error("linear map is not determined by the given images: {0}")]
    Underdetermined(String),
    #[error("images are incompatible with linear equivalence: {0}")]
    Inconsistent(String),
    #[error("cannot parse exact scalar {0:?}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
