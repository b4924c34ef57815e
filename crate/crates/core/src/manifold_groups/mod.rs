//! Fundamental groups of Seifert-fibered spaces with boundary and of torus
//! bundles with finite-order monodromy, plus triangle-group classification.

mod descriptor;
mod element;
mod matrix;
mod seifert;
mod semidirect;
mod triangle;

pub use descriptor::{ConnectedSumDescriptor, ManifoldGroup, Summand};
pub use element::GroupElement;
pub use matrix::{fixed_lattice, matrix_order, matrix_power, solve, IntMatrix2, MatrixOrder, Sublattice, MAX_FINITE_ORDER};
pub use seifert::{quotient_by_fiber, seifert_group, ExceptionalFiber, SeifertPresentation, SeifertSpec};
pub use semidirect::{
    centralizer_semidirect, semidirect_commutes, semidirect_inverse, semidirect_mul, semidirect_power, LatticeCoset,
    ResidueConstraint, SemidirectCentralizer, SemidirectElement,
};
pub use triangle::{triangle_classify, Geometry, TriangleType};

use thiserror::Error;

use crate::words::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error("integer overflow")]
    Overflow,
    #[error("matrix {0} is not invertible over the integers")]
    NotUnimodular(IntMatrix2),
    #[error("monodromy {0} has infinite order")]
    InfiniteOrderMonodromy(IntMatrix2),
    #[error("operation undefined on the identity element")]
    IdentityElement,
    #[error("invalid exceptional fiber ({alpha}, {beta}): need alpha >= 2 and gcd(alpha, beta) = 1")]
    InvalidFiber { alpha: i64, beta: i64 },
    #[error("closed Seifert manifolds have no presentation here; use the lens-space, triangle-group or torus-bundle routes")]
    ClosedSeifert,
    #[error("triangle group needs r, s, t >= 2, got ({0}, {1}, {2})")]
    InvalidTriangle(u64, u64, u64),
    #[error("invalid manifold descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
}
