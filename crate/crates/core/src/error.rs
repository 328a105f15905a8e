use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion has zero norm")]
    ZeroQuaternion,
    #[error("quaternion norm {0} is not 1")]
    NotUnit(f64),
    #[error("quaternions do not share real part and norm")]
    NotSameEigenclass,
    #[error("complex dimension {0} is odd")]
    OddDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("eigenvalue {0} has no conjugate partner within tolerance")]
    UnpairedEigenvalue(Complex64),
    #[error("matrix is not diagonalizable (eigenvector condition estimate {condition:e})")]
    NotDiagonalizable { condition: f64 },
    #[error("eigenvector matrix is singular")]
    SingularEigenvectorMatrix,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not anti-hermitian")]
    NotAntiHermitian,
    #[error("eigenvalue {0} of an anti-hermitian matrix is not purely imaginary")]
    NotImaginary(Complex64),
    #[error("operators do not commute (commutator norm {0:e})")]
    NotCommuting(f64),
    #[error("operators are not simultaneously diagonalizable")]
    NotSimultaneouslyDiagonalizable,
    #[error("vector {0} is not a common right eigenvector with complex eigenvalue")]
    NotCommonEigenvector(usize),
    #[error("left eigenvalue search found no roots")]
    NoRootsFound,
    #[error("left eigenvalue solver needs a 2x2 matrix, got {0}x{0}")]
    NotTwoByTwo(usize),
    #[error("spectrum order does not match the computed spectrum")]
    SpectrumOrderMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable code, stable across releases.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::ZeroQuaternion => "zero-quaternion",
            Error::NotUnit(_) => "not-unit",
            Error::NotSameEigenclass => "not-same-eigenclass",
            Error::OddDimension(_) => "odd-dimension",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonSquare { .. } => "non-square",
            Error::DimensionTooLarge { .. } => "dimension-too-large",
            Error::NoConvergence { .. } => "no-convergence",
            Error::UnpairedEigenvalue(_) => "unpaired-eigenvalue",
            Error::NotDiagonalizable { .. } => "not-diagonalizable",
            Error::SingularEigenvectorMatrix => "singular-eigenvector-matrix",
            Error::SingularMatrix => "singular-matrix",
            Error::NotAntiHermitian => "not-anti-hermitian",
            Error::NotImaginary(_) => "not-imaginary",
            Error::NotCommuting(_) => "not-commuting",
            Error::NotSimultaneouslyDiagonalizable => "not-simultaneously-diagonalizable",
            Error::NotCommonEigenvector(_) => "not-common-eigenvector",
            Error::NoRootsFound => "no-roots-found",
            Error::NotTwoByTwo(_) => "not-two-by-two",
            Error::SpectrumOrderMismatch => "spectrum-order-mismatch",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
