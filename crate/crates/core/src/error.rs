use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid configuration: {0}")]
    GridConfig(String),

    #[error("unknown dimension tag `{0}`")]
    UnknownDimension(String),

    #[error("invalid gravity g = {0}; must be positive")]
    InvalidGravity(f64),

    #[error("cannot weigh a clock at rest (v = {0})")]
    WeighAtRest(f64),

    #[error("speed {v} is not below c = {c}")]
    Superluminal { v: f64, c: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("spatial metric is singular or not positive definite at x = {0:?}")]
    SingularMetric([f64; 3]),

    #[error("metric evaluated outside its domain at x = {0:?}")]
    OutsideDomain([f64; 3]),

    #[error("degenerate phase-space point: square-root argument {0} is not positive")]
    DegeneratePoint(f64),

    #[error("initial point is off the constraint surface (phi1 = {phi1:e}, phi2 = {phi2:e})")]
    OffConstraintSurface { phi1: f64, phi2: f64 },

    #[error("proper time is not monotone along the trajectory at step {0}")]
    NonMonotoneProperTime(usize),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("aliasing: boundary amplitude ratio {ratio:e} on the {axis} axis exceeds {limit:e}")]
    Aliasing {
        axis: &'static str,
        ratio: f64,
        limit: f64,
    },

    #[error("dilation operator undefined: state support reaches the E = p = 0 cone tip")]
    UndefinedDilation,

    #[error("expectation has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("mean Hamiltonian {0} is not positive")]
    NonPositiveEnergy(f64),

    #[error("optimizer bracket failure: minimum at {at} lies on the bracket edge [{lo}, {hi}]")]
    BracketFailure { at: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
