//! Error types shared across the crate.

use crate::expr::Index;
use crate::factors::FactorProduct;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("could not purge index `{index}` from {what}; partial result kept")]
    Incomplete {
        index: Index,
        what: String,
        partial: Box<FactorProduct>,
    },
}

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("series is not simplified: Pochhammer base `{0}` carries a summation index")]
    NotSimplified(String),
    #[error("series must have exactly two summation indices, found {0}")]
    NotTwoVariable(usize),
    #[error("unknown series: characteristic list {0}")]
    UnknownSeries(String),
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("pattern already registered as `{existing}`")]
    DuplicatePattern { existing: String },
    #[error("catalog io: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog parse: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unsupported subseries: {0}")]
    UnsupportedSubseries(String),
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Roc(#[from] RocError),
}

#[derive(Debug, Error)]
pub enum RocError {
    #[error("degenerate boundary curve: {0}")]
    DegenerateCurve(String),
    #[error("boundary degree {0} in both variables exceeds closed-form range")]
    UnsolvableDegree(u32),
    #[error("series must have exactly two summation indices, found {0}")]
    NotTwoVariable(usize),
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("denominator Pochhammer `({base})_{shift}` vanishes on the summation lattice")]
    PoleHit { base: String, shift: String },
    #[error("series shows no numeric convergence at this point (shell magnitudes not decreasing)")]
    NotConverging,
    #[error("prefactor power base `{0}` is not a positive real at this point (branch tracking unsupported)")]
    PrefactorBranch(String),
    #[error("unbound symbol `{0}` in numeric evaluation")]
    Unbound(String),
    #[error("no sampled point lies inside both convergence regions")]
    EmptyOverlap,
}

#[derive(Debug, Error)]
#[error("parse error at column {col}: {message}")]
pub struct ParseError {
    pub col: usize,
    pub message: String,
}
