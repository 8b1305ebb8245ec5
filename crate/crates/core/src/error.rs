use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("square root of an interval reaching below zero")]
    NegativeRadicand,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument too close to a pole of tan")]
    PoleProximity,
    #[error("unsupported seed polygon: {0} sides (expected 3, 4, 6 or 30)")]
    UnsupportedSeed(u32),
    #[error("rung {index} out of range (ladder has {len} rungs, need {need})")]
    Index { index: usize, len: usize, need: &'static str },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("insufficient samples: need at least {need}, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("parse error: {0}")]
    Parse(String),
}
