//! Command-line front end: manifest ingestion, invariant evaluation,
//! framing classification and self-check suites.

pub mod commands;
pub mod manifest;
pub mod report;
pub mod suites;

use aslk_core::classify::ClassifyError;
use aslk_core::framed_gauss::GaussError;
use aslk_core::loop_calculus::LoopError;
use aslk_core::manifold_groups::ManifoldError;
use aslk_core::words::WordError;
use thiserror::Error;

pub use manifest::Manifest;
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::NotFreeProduct | WordError::NotFiberExtension => CliError::Unsupported(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ManifoldError> for CliError {
    fn from(e: ManifoldError) -> Self {
        match e {
            ManifoldError::Unsupported(_) | ManifoldError::InfiniteOrderMonodromy(_) => {
                CliError::Unsupported(e.to_string())
            }
            ManifoldError::Word(w) => w.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            LoopError::Word(w) => w.into(),
            LoopError::Manifold(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GaussError> for CliError {
    fn from(e: GaussError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Manifold(m) => m.into(),
            ClassifyError::Loop(l) => l.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// A finished command: its report and whether any check in it failed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
}

impl Outcome {
    pub fn ok(report: Report) -> Self {
        Self { report, failed: false }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}
