use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be odd, got {0}")]
    EvenDimension(usize),
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} outside the grid {{-{j}, ..., {j}}}")]
    IndexOutOfRange { index: i64, j: i64 },
    #[error("kappa must be positive and finite, got {0}")]
    InvalidKappa(f64),
    #[error("theta series requires Im(tau) > 0, got {0}")]
    NonConvergentTau(f64),
    #[error("operator is not Hermitian (max |M - M^+| = {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("degenerate eigenvalues at positions {0:?}")]
    Degenerate(Vec<usize>),
    #[error("sign-alternation count is ambiguous for eigenvector {0}")]
    AmbiguousAlternation(usize),
    #[error("sign-alternation counts are not a permutation of 0..{0}")]
    AlternationCounts(usize),
    #[error("weight vanishes at grid indices {0:?}")]
    WeightDegenerate(Vec<i64>),
    #[error("moment matrix condition number {0:e} exceeds the limit")]
    IllConditioned(f64),
    #[error("function is not even (max |psi(-n) - psi(n)| = {0:e})")]
    NotEven(f64),
    #[error("frame vector {0} is zero")]
    ZeroVector(usize),
    #[error("family/kappa combination not supported: {0}")]
    UnsupportedFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
