//! Multiplicative inversion of Wolff-Denjoy series.
//!
//! For `f(z) = Σ c_k/(λ_k − z)` this crate computes the expansion
//! `1/f(z) = α + βz + (pole part)`:
//!
//! * [`real_inverse`] handles positive coefficients over increasing real
//!   poles, where every zero of `f` is simple and interlaces the poles;
//! * [`rational_inverse`] handles finite sums with arbitrary complex weights
//!   and poles, where zeros may be multiple;
//! * [`operator`] applies both to dense complex matrices, building `f(A)`
//!   from resolvents and its inverse from the expansion.

// `!(x < y)` is used on purpose where NaN must fall into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod hull;
pub mod operator;
pub mod poly;
pub mod rational_inverse;
pub mod real_inverse;
pub mod series;
pub mod sum;

pub use error::{Result, WdError};
pub use operator::{
    apply_pole_sum, apply_series, left_inverse, left_inverse_general, left_inverse_real,
    regularized_family, resolvent, resolvent_pair_probe, separation_check, ForbiddenRegion,
    InverseExpansion, MatrixOperator, ResolventPairReport, SeparationReport,
};
pub use rational_inverse::{
    find_zero_clusters, hull_check, partial_fraction_inverse, partial_fraction_inverse_with,
    to_poly_pair, verify_general, GeneralInverseExpansion, HullReport, InverseOptions, PolyPair,
    ZeroCluster, ZeroGroup,
};
pub use real_inverse::{
    compute_alpha_beta, invert, isolate_zero, verify_expansion, InverseTerm, RealInverseExpansion,
};
pub use series::{
    eval_complex_sum, eval_derivative_real, eval_real, ComplexPoleSum, GuardedValue, RealWDSeries,
};
