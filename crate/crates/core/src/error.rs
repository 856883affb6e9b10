use thiserror::Error;

/// Errors produced by the modeling and fitting routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the physical or mathematical domain of the
    /// operation (non-positive stretch, negative pressure, displacement
    /// beyond the working range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller violated an API contract: too few samples, an empty
    /// family list, a non-monotone grid, duplicate abscissae.
    #[error("usage error: {0}")]
    Usage(String),

    /// The least-squares design matrix is rank deficient and the fit has
    /// no unique solution.
    #[error("singular fit: {0}")]
    SingularFit(String),

    /// An inverse-calibration step produced a non-physical result.
    #[error("calibration error: {0}")]
    Calibration(String),

    /// A tabulated quantity was queried outside its abscissa range.
    #[error("extrapolation error: {name} queried at {at}, table covers [{lo}, {hi}]")]
    Extrapolation {
        name: &'static str,
        at: f64,
        lo: f64,
        hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
