use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("interpolation points {0} and {1} are not distinct")]
    NonDistinctPoints(usize, usize),

    #[error("Pick matrix at the extremal norm has nullity {0} > 1; data come from a lower-degree Blaschke product")]
    DegenerateNullspace(usize),

    #[error("extremal solution failed verification: {0}")]
    VerificationFailed(String),

    #[error("Schur reduction undefined: |v_N| = {0} >= 1")]
    UnimodularValue(f64),

    #[error("extremality certificate failed: {0}")]
    CertificateFailed(String),

    #[error("subset enumeration limited to 16 points, got {0}")]
    TooManyPoints(usize),

    #[error("ζ has no norm-preserving extension from the embedded disk (every extension has sup norm >= √2)")]
    NoNormPreservingExtension,

    #[error("restriction to the embedded disk has g'(0) = {0}, so the candidate is not a norm-one extension")]
    DerivativeNotVanishingAtZero(f64),

    #[error("perturbation gap is not positive: gamma = {0}")]
    NonpositiveGap(f64),

    #[error("power-series truncation remainder {0:e} exceeds 1e-12")]
    TruncationTooLarge(f64),

    #[error("evaluation at the point is inconsistent on μ-equivalent functions (defect {0:e})")]
    InconsistentEvaluation(f64),

    #[error("representing density failed to reproduce evaluations (error {0:e})")]
    ReproductionFailed(f64),

    #[error("property violated for sample {index} (seed {seed:#x}): {detail}")]
    PropertyViolation {
        seed: u64,
        index: u64,
        detail: String,
    },

    #[error("numerical failure: {0}")]
    Numeric(String),
}
