use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular at t = 1")]
    SingularAtOne,
    #[error("matrix is not Hermitian: entry ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("evaluation at e^(2 pi i {k}/{p}) is singular")]
    SingularEvaluation { k: i64, p: u64 },
    #[error("evaluation at t = 1 is excluded (signature is 0 there by convention)")]
    AtOne,
    #[error("Seifert matrix has odd size {0}")]
    OddSize(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("det(A - A^T) = {0}, expected 1")]
    NotUnimodular(String),
    #[error("A - A^T is not the standard symplectic form [[0, I], [-I, 0]]")]
    NonStandardBasis,
    #[error("clover matrix is not unimodular at t = 1")]
    NotUnimodularAtOne,
    #[error("not {p}-regular: a {p}-th root of unity is a root of the Alexander polynomial")]
    NotPRegular { p: u64 },
    #[error("theta class has a denominator vanishing at a {p}-th root of unity")]
    QSingularAtP { p: u64 },
    #[error("theta class is singular on the torus")]
    SingularOnTorus,
    #[error("denominator vanishes at t = 1 (not in the localized ring)")]
    NotLocal,
    #[error("graph too large for brute-force enumeration ({0} vertices)")]
    TooLarge(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("p must be positive")]
    ZeroP,
}

pub type Result<T> = std::result::Result<T, Error>;
