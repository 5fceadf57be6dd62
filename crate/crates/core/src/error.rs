use thiserror::Error;

use crate::classifier::ZeroClassification;

/// Every failure the library can report. Variant names are part of the CLI
/// contract: domain errors are printed as `error: <Variant>: <message>`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ZeroPolynomial: operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("EndpointIsRoot: interval endpoint {0} is a root; perturb the bracket")]
    EndpointIsRoot(String),

    #[error("PoleAtNu: a Pochhammer factor in a denominator vanishes at nu = {0}")]
    PoleAtNu(String),

    #[error("NonpositiveIntegerNu: nu = {0} lies in {{0, -1, -2, ...}}")]
    NonpositiveIntegerNu(String),

    #[error("NonpositiveNu: nu = {0} must be positive")]
    NonpositiveNu(String),

    #[error("NonadmissibleNu: recurrence coefficient denominator vanishes at nu = {0}")]
    NonadmissibleNu(String),

    #[error("ZeroNu: h-values are undefined at nu = 0")]
    ZeroNu,

    #[error("QAtOneOverNuZero: q_{n}(1/nu) vanishes at nu = {nu}")]
    QAtOneOverNuZero { nu: String, n: usize },

    #[error("NonexactDivision: polynomial division left a nonzero remainder")]
    NonexactDivision,

    #[error("PrecisionExhausted: {0}")]
    PrecisionExhausted(String),

    #[error("BracketFailure: {0}")]
    BracketFailure(String),

    #[error("BracketSignFailure: endpoints of ({lo}, {hi}) evaluate with equal sign")]
    BracketSignFailure { lo: String, hi: String },

    #[error("RootIsolationFailure: {0}")]
    RootIsolationFailure(String),

    #[error("NuInM: nu = {nu} is an exact zero of h_{n}; the counting function is undefined there")]
    NuInM { nu: String, n: usize },

    #[error("NonStabilized: no run of {window} positive signs before n = {cap}")]
    NonStabilized { window: usize, cap: usize },

    #[error("UndecidableSide: J'_nu(|nu|) is below resolvable precision; nu is numerically nu_{}", .fallback.k.unwrap_or(0))]
    UndecidableSide { fallback: Box<ZeroClassification> },

    #[error("CountMismatch: closed-form count {closed} disagrees with 2 * counted negatives {counted}")]
    CountMismatch { closed: usize, counted: usize },

    #[error("HankelMismatch: closed-form and direct Delta_{0} differ")]
    HankelMismatch(usize),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::EndpointIsRoot(_) => "EndpointIsRoot",
            Error::PoleAtNu(_) => "PoleAtNu",
            Error::NonpositiveIntegerNu(_) => "NonpositiveIntegerNu",
            Error::NonpositiveNu(_) => "NonpositiveNu",
            Error::NonadmissibleNu(_) => "NonadmissibleNu",
            Error::ZeroNu => "ZeroNu",
            Error::QAtOneOverNuZero { .. } => "QAtOneOverNuZero",
            Error::NonexactDivision => "NonexactDivision",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::BracketFailure(_) => "BracketFailure",
            Error::BracketSignFailure { .. } => "BracketSignFailure",
            Error::RootIsolationFailure(_) => "RootIsolationFailure",
            Error::NuInM { .. } => "NuInM",
            Error::NonStabilized { .. } => "NonStabilized",
            Error::UndecidableSide { .. } => "UndecidableSide",
            Error::CountMismatch { .. } => "CountMismatch",
            Error::HankelMismatch(_) => "HankelMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
