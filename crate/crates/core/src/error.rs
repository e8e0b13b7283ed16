//! Error type shared by the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum McKayError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid action: {}", .0.join("; "))]
    InvalidAction(Vec<String>),
    #[error("arrow {0} is a loop; loops have no Cartan matrix")]
    Loop(String),
    #[error("not a generalized Cartan matrix: {0}")]
    NotGeneralizedCartan(String),
    #[error("lattice mismatch: expected length {expected}, found {found}")]
    WrongLattice { expected: usize, found: usize },
    #[error("arrow constructions disagree: {0}")]
    MethodDisagreement(String),
    #[error("operation needs finite type: {0}")]
    NotFiniteType(String),
    #[error("operation needs a symmetric Cartan matrix")]
    NotSymmetric,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, McKayError>;
