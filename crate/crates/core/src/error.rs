use thiserror::Error;

use crate::colour::ColourSet;

/// A state together with two rejecting cycle colour sets whose union is accepting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypenessWitness {
    pub state: usize,
    pub first: ColourSet,
    pub second: ColourSet,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),

    #[error(
        "automaton is not Rabin-typeable: at state {} the rejecting sets {:?} and {:?} have an accepting union",
        .0.state, .0.first, .0.second
    )]
    NotRabinTypeable(TypenessWitness),

    #[error("colouring is improper on edge ({0}, {1})")]
    ImproperColouring(usize, usize),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
