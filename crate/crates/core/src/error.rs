use thiserror::Error;

use crate::ordinal::OrdinalError;
use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the endpoint δ is not in the domain; it is identified with the joint")]
    EndpointNotInDomain,
    #[error("the joint has no interval or NG class")]
    JointHasNoClass,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("tower level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("points are not in the same orbit")]
    NotSameOrbit,
    #[error("stage domain error: {0}")]
    Domain(String),
    #[error("translation unsupported: {0}")]
    UnsupportedTranslation(String),
    #[error("automorphism token is not defined at {0}")]
    TokenUndefined(String),
    #[error("invalid thread: {0}")]
    InvalidThread(String),
    #[error("threads are incompatible: {0}")]
    ThreadMismatch(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("invalid witness input: {0}")]
    InvalidWitnessInput(String),
    #[error("invalid sequence descriptor: {0}")]
    InvalidDescriptor(String),
}

impl Error {
    /// Stable machine-readable code for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ordinal(_) => "representation_overflow",
            Error::Parse(_) => "syntax_error",
            Error::EndpointNotInDomain => "endpoint_not_in_domain",
            Error::JointHasNoClass => "joint_has_no_class",
            Error::InvalidPoint(_) => "invalid_point",
            Error::LevelMismatch { .. } => "level_mismatch",
            Error::NotSameOrbit => "not_same_orbit",
            Error::Domain(_) => "domain_error",
            Error::UnsupportedTranslation(_) => "unsupported_translation",
            Error::TokenUndefined(_) => "token_undefined",
            Error::InvalidThread(_) => "invalid_thread",
            Error::ThreadMismatch(_) => "thread_mismatch",
            Error::InvalidRecipe(_) => "invalid_recipe",
            Error::InvalidWitnessInput(_) => "invalid_witness_input",
            Error::InvalidDescriptor(_) => "invalid_descriptor",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
