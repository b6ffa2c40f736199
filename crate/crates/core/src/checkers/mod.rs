//! Decision procedures for transitivity, weak mixing, mixing, dense periodic
//! points, sensitivity and Devaney chaos.

pub mod bounded;
pub mod dynamics;
pub mod finite;
pub mod proof;
pub mod report;

use thiserror::Error;

use crate::group::GroupError;

pub use dynamics::{Dynamics, FiniteDynamics, ShiftDynamics};
pub use report::{Bounds, Property, PropertyReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("open set {0} is empty")]
    EmptyOpen(usize),
    #[error("point {point} is out of range for a space with {points} points")]
    OutOfRange { point: usize, points: usize },
    #[error("open-set lists must be non-empty and of equal length, got {us} and {vs}")]
    LengthMismatch { us: usize, vs: usize },
    #[error("the group is not abelian")]
    NonAbelian,
    #[error("γ(U_{index}) ∩ V_{index} is empty")]
    Precondition { index: usize },
    #[error("open set {index} contains no periodic point")]
    NoPeriodicPoint { index: usize },
    #[error("no element within the bounds at step {step}: {detail}")]
    Blocked { step: usize, detail: String },
    #[error("the sensitivity grid must not be empty")]
    EmptyGrid,
    #[error(transparent)]
    Group(#[from] GroupError),
}
