use thiserror::Error;

use crate::hypergraph::CircuitViolation;
use crate::matroid::AxiomCounterexample;
use crate::set::ElementSet;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("edge {0} is not an edge of the hypergraph")]
    NotFound(ElementSet),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("circuit axioms violated: {0}")]
    InvalidCircuits(CircuitViolation),

    #[error("element {0} is a loop; loops are not supported")]
    LoopNotSupported(usize),

    #[error("not a matroid: {0}")]
    NotAMatroid(AxiomCounterexample),

    #[error("element {0} lies in no face, so no coloring exists")]
    NoColoring(usize),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("claim violation: {0}")]
    ClaimViolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Whether this error signals a failed mathematical assertion rather
    /// than bad input or exhausted limits.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_) | Error::ClaimViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
