//! Exact word arithmetic in free groups, free products of cyclic groups and
//! their extensions by a fiber.

mod conjugacy;
mod group;
mod word;

pub use conjugacy::{
    centralizer_free_product, cyclic_exponent, cyclic_reduce, enumerate_words, is_conjugate_into_factor, primitive_root,
    CentralizerDescription, CentralizerSummary,
};
pub use group::{GeneratorId, Generator, GroupKind, Order, PresentedGroup};
pub use word::{GroupWord, Letter};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator symbol `{0}`")]
    InvalidSymbol(String),
    #[error("duplicate generator symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("generator `{0}` has invalid order {1}")]
    InvalidOrder(String, u32),
    #[error("generator `{0}` has an inconsistent orientation character")]
    InvalidOrientation(String),
    #[error("words belong to different groups")]
    ContextMismatch,
    #[error("exponent overflow")]
    Overflow,
    #[error("operation undefined on the identity element")]
    IdentityElement,
    #[error("element has finite order")]
    Torsion,
    #[error("operation requires a free product of cyclic groups")]
    NotFreeProduct,
    #[error("operation requires a fiber extension")]
    NotFiberExtension,
    #[error("parse error: {0}")]
    Parse(String),
}
