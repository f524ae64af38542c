use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("real and imaginary parts have mismatched shapes")]
    ShapeMismatch,

    #[error("declared dim {declared} does not match matrix size {actual}")]
    DeclaredDim { declared: usize, actual: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("not Hermitian: entry ({row},{col}) asymmetry {asymmetry:e} exceeds 1e-12")]
    NotHermitian { row: usize, col: usize, asymmetry: f64 },

    #[error("non-finite matrix entry at ({row},{col})")]
    NonFinite { row: usize, col: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { dim: usize, rank: usize },

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("not an effect: eigenvalues span [{min}, {max}]")]
    NotAnEffect { min: f64, max: f64 },

    #[error("frame has no elements")]
    EmptyFrame,

    #[error("frame elements do not sum to the identity (residual {residual:e})")]
    NotNormalized { residual: f64 },

    #[error("frame element {index} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { index: usize, min_eigenvalue: f64 },

    #[error("dual frame requires exactly n^2 = {expected} elements, got {actual}")]
    NotABasis { expected: usize, actual: usize },

    #[error("Gram matrix singular (min |eigenvalue| {min:e}, max {max:e})")]
    SingularGram { min: f64, max: f64 },

    #[error("dual pair is not biorthogonal (residual {residual:e})")]
    NotBiorthogonal { residual: f64 },

    #[error("failed to draw linearly independent operators after {attempts} attempts")]
    IndependenceNotAchieved { attempts: usize },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("reconstruction residual {residual:e} exceeds bound {bound:e}")]
    ReconstructionResidual { residual: f64, bound: f64 },

    #[error("negativity disjunction violated: neither T nor S was found non-positive at dim {dim}")]
    NegativityDisjunction { dim: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("weights invalid: {0}")]
    InvalidWeights(String),

    #[error("missing certificate for pair ({0}, {1})")]
    MissingCertificate(usize, usize),

    #[error("vectors are not orthonormal (defect {0:e})")]
    NotOrthonormal(f64),

    #[error("frame is not positive; the approximation experiment requires a POVM")]
    FrameNotPositive,

    #[error("linear program: {0}")]
    Lp(#[from] crate::lp::LpError),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
