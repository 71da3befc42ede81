use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the configured maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected a {expected}x{expected} single-site operator, got {rows}x{cols}")]
    NotSingleSite { expected: usize, rows: usize, cols: usize },

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("state vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("number of sites {n} outside 1..={max}")]
    InvalidSiteCount { n: usize, max: usize },

    #[error("site {site} out of range 1..={n_sites}")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("pair correlation needs two distinct sites, got {0} twice")]
    SameSite(usize),

    #[error("inadmissible quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("invalid coupling path: {0}")]
    InvalidPath(String),

    #[error("lowering operator annihilates the state with m = -j")]
    Annihilated,

    #[error("only spin-1/2 coupling is supported (twice_j2 = {0})")]
    UnsupportedCoupling(u32),

    #[error("effective unit is undefined for j = 0")]
    ZeroSpin,

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
