use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(&'static str),
    /// A series operation was asked for more output order than its inputs carry.
    /// Operations never silently return lower-order results.
    #[error("series order {available} is insufficient, need at least {required}")]
    InsufficientOrder { required: usize, available: usize },
    #[error("point outside the Böttcher domain: need |y| > |x| and |y| > {required_radius}")]
    OutsideBottcherDomain { required_radius: f64 },
    /// An orbit left the overflow guard before the requested step count.
    #[error("orbit diverged past the overflow guard at step {step}")]
    Diverged { step: usize },
    /// The check is only meaningful for equal Jacobians (gamma index 0).
    #[error("check requires equal Jacobians, got gamma index {gamma_index}")]
    UnequalJacobians { gamma_index: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
