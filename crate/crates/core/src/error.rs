use thiserror::Error;

use crate::formula::{Formula, Path};

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("ill-typed composition at {path}: target {target} does not match source {src}")]
    IllTyped {
        path: Path,
        target: Formula,
        src: Formula,
    },

    #[error("formula contains unit constants")]
    HasUnits,

    #[error("form sequence is not diversified: letter {0} repeats")]
    NotDiversified(String),

    #[error("occurrence does not resolve in this form sequence")]
    BadOccurrence,

    #[error("deleting {0:?} would erase every letter")]
    WouldEraseAll(Vec<String>),

    #[error("pair is not legitimate: {0}")]
    NotLegitimate(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unknown equation schema `{0}`")]
    UnknownSchema(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("generator {gen} is not available in theory {theory}")]
    GeneratorNotInTheory { gen: String, theory: String },

    #[error("arrow term is not all-splitting")]
    NotAllSplitting,

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
