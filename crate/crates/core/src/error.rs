use thiserror::Error;

use crate::kind::GraphKind;
use crate::validate::Diagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {}", join_diagnostics(.0))]
    InvalidGraph(Vec<Diagnostic>),

    #[error("{embedding}: invalid source: {reason}")]
    InvalidSource {
        embedding: &'static str,
        reason: String,
    },

    #[error("{embedding}: not in image: {reason}")]
    NotInImage {
        embedding: &'static str,
        reason: String,
    },

    #[error("kind mismatch at step {step}: expected {expected}, found {found}")]
    KindMismatch {
        step: usize,
        expected: GraphKind,
        found: GraphKind,
    },

    #[error("no chain in the catalog from {from} to {to}")]
    NoPath { from: GraphKind, to: GraphKind },

    #[error("unknown embedding '{0}'")]
    UnknownEmbedding(String),

    #[error("bad kind spec: {0}")]
    KindSpec(String),

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("universe has {size} graphs, over the cap of {cap}")]
    BoundsTooLarge { size: u128, cap: u64 },
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
