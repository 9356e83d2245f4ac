use thiserror::Error;

/// Errors raised by the exact pipeline.
///
/// Variants split into two families: input validation (bad polynomials,
/// parameters outside their domain) and computation failures (a search or
/// a refinement loop that hit its cap). [`Error::is_validation`] tells them
/// apart so front ends can map them onto distinct exit paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial is reducible: factor {0}")]
    Reducible(String),
    #[error("field is not totally real: {real} real roots for degree {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("element is not primitive (minimal polynomial degree {found}, field degree {expected})")]
    NotPrimitive { found: usize, expected: usize },
    #[error("interval [{lo}, {hi}] does not isolate exactly one root (count {count})")]
    NotIsolating { lo: String, hi: String, count: usize },
    #[error("t0 = {0} does not exceed the largest root of the volume polynomial")]
    InvalidT0(u64),
    #[error("factor selection failed: {0}")]
    FactorSelection(String),
    #[error("refinement cap reached: {0}")]
    RefinementCap(String),
    #[error("primitive search exhausted: {0}")]
    SearchExhausted(String),
    #[error("catalog has no field: {0}")]
    NoCatalogField(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// `true` for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::FactorSelection(_) | Error::RefinementCap(_) | Error::SearchExhausted(_) | Error::Inconsistent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
