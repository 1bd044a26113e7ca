use thiserror::Error;

use crate::scalar::SymAtom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no value assigned to atom {0}")]
    MissingAtom(SymAtom),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is odd; an even dimension is required")]
    OddDimension(usize),
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("dimension {0} is not supported (need an even n with 4 <= n <= 16)")]
    UnsupportedDimension(usize),
    #[error("wedge of grades {left} and {right} exceeds dimension {dim}")]
    GradeOverflow { left: usize, right: usize, dim: usize },
    #[error("pairing needs a top-grade tensor (grade {dim}), got grade {grade}")]
    NotTopGrade { grade: usize, dim: usize },
    #[error("rational function has a pole on the real axis")]
    RealPole,
    #[error("rational function does not vanish at infinity")]
    NotDecaying,
    #[error("integrand does not decay fast enough to be integrable on the real line")]
    NonIntegrable,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
