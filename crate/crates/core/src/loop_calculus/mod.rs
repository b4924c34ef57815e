//! Loop homomorphisms on words in the generator loops of the space of knots.

mod context;
mod loop_word;
mod maps;

pub use context::{decompose_power, t_value, Decomposition, EvaluationContext};
pub use loop_word::{LoopGenerator, LoopWord};
pub use maps::{
    delta, delta_aslk, delta_aslk_tilde, path_delta_aslk, path_delta_aslk_tilde, verify_identity, ContextFlags,
    DiscriminantCrossing, FiberSlideCase, IdentityReport, IdentityVerdict, MapValue, PathRecord, UnavailableReason,
};

use thiserror::Error;

use crate::manifold_groups::ManifoldError;
use crate::words::WordError;

#[derive(Debug, Error)]
pub enum LoopError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow")]
    Overflow,
    #[error("generator `{0}` is not valid in this context")]
    InvalidGenerator(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("element `{0}` does not belong to the context group")]
    ForeignElement(String),
    #[error("`{0}` does not commute with the knot class")]
    NotInCentralizer(String),
    #[error("no power of the trace lies in the subgroup generated by the knot and fiber")]
    NoPowerRelation,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}
