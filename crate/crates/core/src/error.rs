use thiserror::Error;

use crate::efield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("the two points coincide")]
    DegenerateSegment,
    #[error("malformed surface: {0}")]
    MalformedSurface(String),
    #[error("not an observer of this model: {0}")]
    NotAnObserver(String),
    #[error("unknown body: {0}")]
    UnknownBody(String),
    #[error("presupposition violated: {0}")]
    PresuppositionViolated(String),
    #[error("velocity with |v|² = {0} is not below the speed of light")]
    FasterThanLight(String),
    #[error("map does not preserve lines of slope 1")]
    NotConePreserving,
    #[error("dimension {d} is too low (need at least {min})")]
    DimensionTooLow { d: usize, min: usize },
    #[error("bad shape parameters: {0}")]
    BadShape(String),
    #[error("no exact reduction available: {0}")]
    UnknownReduction(String),
    #[error("unknown axiom: {0}")]
    UnknownAxiom(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("not a twin situation: {0}")]
    NotATwinSituation(String),
    #[error("spec file error at line {line}, column {col}: {msg}")]
    SpecParse { line: usize, col: usize, msg: String },
    #[error("scenario file error at line {line}, column {col}: {msg}")]
    ScenarioParse { line: usize, col: usize, msg: String },
    #[error("unknown model: {0}")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
