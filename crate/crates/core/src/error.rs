use num_complex::Complex64;
use thiserror::Error;

use crate::rational_inverse::ZeroCluster;

pub type Result<T, E = WdError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WdError {
    /// A constructor invariant was violated; the message names it.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("evaluation point {z} coincides with a pole")]
    PoleHit { z: Complex64 },

    #[error("evaluation point {z} lies on the tail pole segment [{lo}, {hi}] (tail_sum > 0)")]
    TailRegion { z: Complex64, lo: f64, hi: f64 },

    #[error("tail_sum = {tail_sum} > 0: closed forms are only defined for the stored truncation")]
    TailPresent { tail_sum: f64 },

    #[error("no sign change found in pole gap {gap} ({lo}, {hi})")]
    NoSignChange { gap: usize, lo: f64, hi: f64 },

    #[error("sum of weights {sum} is numerically zero; the inverse has no first-order pole at infinity")]
    DegenerateLeading { sum: Complex64 },

    #[error("zero clusters closer than twice the clustering radius {radius:e}")]
    ClusterAmbiguous {
        radius: f64,
        fine: Vec<ZeroCluster>,
        merged: Vec<ZeroCluster>,
    },

    #[error("grid point {z} is {distance:e} from singular point {singular} (minimum {min_distance})")]
    GridTooClose {
        z: Complex64,
        singular: Complex64,
        distance: f64,
        min_distance: f64,
    },

    #[error("resolvent at {lambda} is singular or ill-conditioned (condition estimate {condition:e})")]
    SingularResolvent { lambda: Complex64, condition: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

impl WdError {
    /// True for failures of the numerical pipeline, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            WdError::NoSignChange { .. }
                | WdError::DegenerateLeading { .. }
                | WdError::ClusterAmbiguous { .. }
                | WdError::SingularResolvent { .. }
        )
    }
}
