use thiserror::Error;

/// Every failure the library reports. Numerical failures carry enough context
/// to tell a caller whether retrying with other settings can help.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at s = {at}")]
    Pole { at: String },

    #[error("precision target unreachable: {0}")]
    Precision(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("zero on or near the contour boundary near {at}")]
    BoundaryZero { at: String },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("pole of L inside the rectangle; split the rectangle or enable pole correction")]
    PoleInside,

    #[error("box holds {0} zeros, expected exactly one")]
    CountNotOne(i64),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("scan incomplete: found {found} zeros, argument principle counts {counted}")]
    Completeness { found: usize, counted: i64 },

    #[error("refined zero drifted out of its search box: {0}")]
    Drift(String),

    #[error("no zero-free ring within {k_max} rings of width {r0}")]
    NoAnnulusFound { k_max: usize, r0: f64 },

    #[error("multiple zero suspected near {at}")]
    MultipleZero { at: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
