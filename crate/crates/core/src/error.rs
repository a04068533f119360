use thiserror::Error;

/// Failures reported by the solvers, the oracle and the grid evaluators.
///
/// Residuals are carried as `f64` regardless of the scalar type so the enum
/// stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude components must be finite, got ({re}, {im})")]
    NonFinite { re: f64, im: f64 },
    #[error("amplitude must be nonzero")]
    ZeroAlpha,
    #[error("family index must be positive (n = 0 is the trivial case)")]
    ZeroIndex,
    #[error("displacement d must be nonzero")]
    ZeroD,
    #[error("phase pair lies in region {kind}, which has no quantized beta family")]
    WrongRegion { kind: &'static str },
    #[error("Im(alpha beta*) = {value} is not on either lattice (residual {residual:e})")]
    NotQuantized { value: f64, residual: f64 },
    #[error("Im(alpha beta*) = {value} is too close to a lattice point to reject and too far to snap (residual {residual:e})")]
    AmbiguousQuantization { value: f64, residual: f64 },
    #[error("Re(alpha beta*) vanishes; resolve the pair through the special phase lines")]
    DegenerateRealPart,
    #[error("phi1 is 0 or pi; phi2 is forced and only valid when Re(alpha beta*) = 0")]
    DegeneratePhi1,
    #[error("the odd cat at zero amplitude has zero norm and cannot be normalized")]
    DegenerateState,
    #[error("Fock truncation too small: tail bound {tail:e} exceeds 1e-3")]
    TruncationTooSmall { tail: f64 },
    #[error("solution failed internal verification (residual {residual:e} > {tolerance:e})")]
    VerificationFailed { residual: f64, tolerance: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable name, used in the CLI's `error` field.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::ZeroAlpha => "ZeroAlpha",
            Error::ZeroIndex => "ZeroIndex",
            Error::ZeroD => "ZeroD",
            Error::WrongRegion { .. } => "WrongRegion",
            Error::NotQuantized { .. } => "NotQuantized",
            Error::AmbiguousQuantization { .. } => "AmbiguousQuantization",
            Error::DegenerateRealPart => "DegenerateRealPart",
            Error::DegeneratePhi1 => "DegeneratePhi1",
            Error::DegenerateState => "DegenerateState",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::VerificationFailed { .. } => "VerificationFailed",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
