use alloc::string::String;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error kinds emitted by the CLI,
/// so renaming one is a wire-format change.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("imaginary part is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("CZ + D is singular")]
    SingularDenominator,
    #[error("entries from different quadratic fields: Q(sqrt {0}) and Q(sqrt {1})")]
    FieldMismatch(u64, u64),
    #[error("{0} is not a square-free positive integer")]
    NotSquareFree(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("({alpha}, {lambda}) is not a real structure type for g = {g}")]
    IndexNotInI { alpha: u8, lambda: usize, g: usize },
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("subspace is not contained in the +i eigenspace of J")]
    WNotHodge,
    #[error("operation requires an exact-mode Siegel point")]
    ModeMismatch,
    #[error("polarization is degenerate")]
    DegeneratePolarization,
    #[error("plane curve is singular")]
    SingularCurve,
    #[error("degree {0} is below 4")]
    DegreeTooSmall(usize),
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("plane is not stable under the involution (max angle {0:e})")]
    NotFStable(f64),
    #[error("rational rounding collapsed the rank from {expected} to {got}")]
    DimensionDrop { expected: usize, got: usize },
    #[error("point is not in the fixed locus of the real structure")]
    NotInFixedLocus,
    #[error("k = {k} is outside 1..={max}")]
    BadK { k: usize, max: usize },
    #[error("solver stopped after {iterations} iterations with residual {best_residual:e} and displacement {displacement:e}")]
    NoConvergence { best_residual: f64, displacement: f64, iterations: usize },
    #[error("entry is not an integer")]
    NotInteger,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSymmetric => "NotSymmetric",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotSymplectic => "NotSymplectic",
            Error::SingularDenominator => "SingularDenominator",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::NotSquareFree(_) => "NotSquareFree",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::IndexNotInI { .. } => "IndexNotInI",
            Error::NotUnimodular => "NotUnimodular",
            Error::WNotHodge => "WNotHodge",
            Error::ModeMismatch => "ModeMismatch",
            Error::DegeneratePolarization => "DegeneratePolarization",
            Error::SingularCurve => "SingularCurve",
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::NotInvolution => "NotInvolution",
            Error::NotFStable(_) => "NotFStable",
            Error::DimensionDrop { .. } => "DimensionDrop",
            Error::NotInFixedLocus => "NotInFixedLocus",
            Error::BadK { .. } => "BadK",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotInteger => "NotInteger",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
