//! Framed Gauss codes of knots in S³, their resolutions and framed
//! Reidemeister moves.

mod code;
mod moves;
mod resolve;

pub use code::{GaussCode, Passage, Strand, Visit};
pub use moves::{apply_move, local_sites, move_sites, Move};
pub use resolve::{resolutions, vassiliev_defect, Resolution};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("crossing {0} is not visited exactly twice")]
    Unpaired(u32),
    #[error("crossing {0} must be visited once over and once under")]
    Pairing(u32),
    #[error("crossing {0} carries two different signs")]
    SignMismatch(u32),
    #[error("double point {0} must be visited once as `a` and then once as `b`")]
    DoublePointPairing(u32),
    #[error("no crossing with id {0}")]
    MissingCrossing(u32),
    #[error("operation requires a code without double points")]
    Singular,
    #[error("code has no double points")]
    NoDoublePoints,
    #[error("move not applicable: {0}")]
    Inapplicable(String),
    #[error("integer overflow")]
    Overflow,
}
