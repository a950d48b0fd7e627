use thiserror::Error;

/// Errors raised by the two-level toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not traceless (|tr H| = {trace:.3e})")]
    NonTraceless { trace: f64 },

    #[error("metric is not Hermitian positive-definite: {0}")]
    InvalidMetric(String),

    #[error("metric operator is singular")]
    SingularMetric,

    #[error("fields must lie in the 1-3 plane (F2 = B2 = 0); got |F2| = {f2:.3e}, |B2| = {b2:.3e}")]
    PlaneRestrictionViolated { f2: f64, b2: f64 },

    #[error("F1^2 + F3^2 and B1^2 + B3^2 differ by {mismatch:.3e}")]
    NormMismatch { mismatch: f64 },

    #[error("field square B1^2 + B3^2 vanishes")]
    DegenerateField,

    #[error("limit field F(0) is not a nonzero real vector")]
    NonRealLimit,

    #[error("field square {re} + {im}i is not a non-negative real number")]
    NonPseudoHermitian { re: f64, im: f64 },

    #[error("eigenbasis is singular: first field component vanishes")]
    SingularEigenbasis,

    #[error("state vector is zero")]
    ZeroState,

    #[error("integration step too large: single-step norm drift {drift:.3e}")]
    StepTooLarge { drift: f64 },

    #[error("transformed Hamiltonian depends on time (variation {variation:.3e})")]
    NotRotatable { variation: f64 },

    #[error("no real solution (radicand {radicand:.6e})")]
    NoRealSolution { radicand: f64 },

    #[error("oscillation frequency is imaginary (delta*omega = {delta_omega:.6e} > 0)")]
    ImaginaryFrequency { delta_omega: f64 },

    #[error("Grassmann element has no definite parity")]
    NonHomogeneous,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable short code, used in machine-readable error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonTraceless { .. } => "NonTraceless",
            Error::InvalidMetric(_) => "InvalidMetric",
            Error::SingularMetric => "SingularMetric",
            Error::PlaneRestrictionViolated { .. } => "PlaneRestrictionViolated",
            Error::NormMismatch { .. } => "NormMismatch",
            Error::DegenerateField => "DegenerateField",
            Error::NonRealLimit => "NonRealLimit",
            Error::NonPseudoHermitian { .. } => "NonPseudoHermitian",
            Error::SingularEigenbasis => "SingularEigenbasis",
            Error::ZeroState => "ZeroState",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::NotRotatable { .. } => "NotRotatable",
            Error::NoRealSolution { .. } => "NoRealSolution",
            Error::ImaginaryFrequency { .. } => "ImaginaryFrequency",
            Error::NonHomogeneous => "NonHomogeneous",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }

    /// True for failures caused by the mathematics of valid input (an
    /// unsolvable condition, a non-real spectrum) rather than malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoRealSolution { .. }
                | Error::ImaginaryFrequency { .. }
                | Error::NonPseudoHermitian { .. }
                | Error::NonRealLimit
                | Error::StepTooLarge { .. }
                | Error::NotRotatable { .. }
                | Error::SingularMetric
                | Error::SingularEigenbasis
                | Error::DegenerateField
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
