use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("phi is only defined for x > 1, got {0}")]
    PhiDomain(f64),

    #[error("zero coefficient at index {0}")]
    ZeroCoefficient(usize),

    #[error("polynomial degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("coefficient {index} has magnitude {magnitude:.3e}, outside [1e-300, 1e300]; rescale the input")]
    CoefficientRange { index: usize, magnitude: f64 },

    #[error("invalid polynomial input: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("root iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error(
        "a root lies too close to the contour |z| = {radius:.6e} \
         (min |p| / max |p| = {ratio:.3e} on the circle)"
    )]
    ContourTooClose { radius: f64, ratio: f64 },

    #[error("winding accumulation did not settle on an integer (got {0:.6})")]
    NonIntegerWinding(f64),

    #[error("argument tracking on |z| = {0:.6e} exceeded the refinement depth")]
    BranchTracking(f64),

    #[error(
        "factor search failed after {doublings} doublings; quotient {index} stayed below target"
    )]
    FactorSearch { doublings: u32, index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
