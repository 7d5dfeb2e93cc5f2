//! Series data model: real Wolff-Denjoy series with positive coefficients
//! and finite complex pole sums, plus guarded evaluation.
//!
//! Both families are written in the resolvent form
//!
//! ```text
//! f(z) = Σ c_k / (λ_k − z)
//! ```
//!
//! An infinite real series is stored as a finite prefix together with a
//! bound `tail_sum` on the mass of the omitted coefficients and the supremum
//! `pole_sup` of all poles. Omitted poles lie in `[λ_N, pole_sup]`, so the
//! tail contributes at most `tail_sum / dist(z, [λ_N, pole_sup])` to `f(z)`.

use num_complex::Complex64;

use crate::error::{Result, WdError};
use crate::sum::{ComplexCompensatedSum, CompensatedSum};

/// A value together with an absolute bound on the contribution of the
/// omitted series tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardedValue<T = Complex64> {
    pub value: T,
    pub error_bound: f64,
}

/// Real Wolff-Denjoy series `Σ c_k/(λ_k − z)` with `c_k > 0` and strictly
/// increasing real poles.
#[derive(Debug, Clone, PartialEq)]
pub struct RealWDSeries {
    coefficients: Vec<f64>,
    poles: Vec<f64>,
    tail_sum: f64,
    pole_sup: f64,
}

impl RealWDSeries {
    /// Builds a tail-free series from its stored terms.
    pub fn new(coefficients: Vec<f64>, poles: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(WdError::InvalidInput(
                "series needs at least one stored term".into(),
            ));
        }
        if coefficients.len() != poles.len() {
            return Err(WdError::InvalidInput(format!(
                "coefficients ({}) and poles ({}) differ in length",
                coefficients.len(),
                poles.len()
            )));
        }
        for (k, &c) in coefficients.iter().enumerate() {
            if !(c.is_finite() && c > 0.0) {
                return Err(WdError::InvalidInput(format!(
                    "coefficient c[{k}] = {c} must be positive and finite"
                )));
            }
        }
        if let Some(k) = poles.iter().position(|p| !p.is_finite()) {
            return Err(WdError::InvalidInput(format!(
                "pole λ[{k}] = {} is not finite",
                poles[k]
            )));
        }
        for (k, w) in poles.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(WdError::InvalidInput(format!(
                    "poles must be strictly increasing: λ[{k}] = {} >= λ[{}] = {}",
                    w[0],
                    k + 1,
                    w[1]
                )));
            }
        }
        let pole_sup = *poles.last().unwrap();
        Ok(Self {
            coefficients,
            poles,
            tail_sum: 0.0,
            pole_sup,
        })
    }

    /// Attaches a tail descriptor: the omitted coefficients sum to at most
    /// `tail_sum` and their poles lie in `[last stored pole, pole_sup]`.
    pub fn with_tail(mut self, tail_sum: f64, pole_sup: f64) -> Result<Self> {
        if !(tail_sum.is_finite() && tail_sum >= 0.0) {
            return Err(WdError::InvalidInput(format!(
                "tail_sum = {tail_sum} must be finite and nonnegative"
            )));
        }
        let last = self.last_pole();
        if !(pole_sup.is_finite() && pole_sup >= last) {
            return Err(WdError::InvalidInput(format!(
                "pole_sup = {pole_sup} must be finite and >= last pole {last}"
            )));
        }
        self.tail_sum = tail_sum;
        self.pole_sup = pole_sup;
        Ok(self)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn tail_sum(&self) -> f64 {
        self.tail_sum
    }

    pub fn pole_sup(&self) -> f64 {
        self.pole_sup
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// `a = λ_1`, the left end of the pole segment.
    pub fn pole_inf(&self) -> f64 {
        self.poles[0]
    }

    fn last_pole(&self) -> f64 {
        *self.poles.last().unwrap()
    }

    /// The segment `[a, b]` containing every pole, including the tail's.
    pub fn pole_segment(&self) -> (f64, f64) {
        (self.pole_inf(), self.pole_sup)
    }

    /// Same data as a general pole sum.
    pub fn to_pole_sum(&self) -> ComplexPoleSum {
        ComplexPoleSum {
            weights: self.coefficients.iter().map(|&c| c.into()).collect(),
            poles: self.poles.iter().map(|&p| p.into()).collect(),
        }
    }

    fn check_point(&self, z: Complex64) -> Result<f64> {
        if z.im == 0.0 && self.poles.contains(&z.re) {
            return Err(WdError::PoleHit { z });
        }
        if self.tail_sum == 0.0 {
            return Ok(f64::INFINITY);
        }
        let (lo, hi) = (self.last_pole(), self.pole_sup);
        let dist = segment_distance(z, lo, hi);
        if dist == 0.0 {
            return Err(WdError::TailRegion { z, lo, hi });
        }
        Ok(dist)
    }

    /// Stored-prefix value at a real point, no checks. Used by root isolation.
    pub(crate) fn value_at(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .zip(&self.poles)
            .map(|(&c, &p)| c / (p - x))
            .collect::<CompensatedSum>()
            .value()
    }

    pub(crate) fn derivative_at(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .zip(&self.poles)
            .map(|(&c, &p)| {
                let d = p - x;
                c / (d * d)
            })
            .collect::<CompensatedSum>()
            .value()
    }

    pub(crate) fn value_at_complex(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .zip(&self.poles)
            .map(|(&c, &p)| c / (p - z))
            .collect::<ComplexCompensatedSum>()
            .value()
    }
}

/// Evaluates `f(z) = Σ c_k/(λ_k − z)` over the stored terms, with a bound on
/// what the omitted tail could add.
pub fn eval_real(series: &RealWDSeries, z: Complex64) -> Result<GuardedValue> {
    let dist = series.check_point(z)?;
    Ok(GuardedValue {
        value: series.value_at_complex(z),
        error_bound: tail_bound(series.tail_sum, dist, 1),
    })
}

/// Evaluates `f′(x) = Σ c_k/(λ_k − x)²` at a real point.
pub fn eval_derivative_real(series: &RealWDSeries, x: f64) -> Result<GuardedValue<f64>> {
    let dist = series.check_point(x.into())?;
    Ok(GuardedValue {
        value: series.derivative_at(x),
        error_bound: tail_bound(series.tail_sum, dist, 2),
    })
}

fn tail_bound(tail_sum: f64, dist: f64, power: i32) -> f64 {
    if tail_sum == 0.0 {
        0.0
    } else {
        tail_sum / dist.powi(power)
    }
}

/// Distance from `z` to the real segment `[lo, hi]`.
pub(crate) fn segment_distance(z: Complex64, lo: f64, hi: f64) -> f64 {
    let x = z.re.clamp(lo, hi);
    (z - Complex64::new(x, 0.0)).norm()
}

/// Finite sum `Σ a_j/(λ_j − z)` with nonzero complex weights over pairwise
/// distinct complex poles.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoleSum {
    weights: Vec<Complex64>,
    poles: Vec<Complex64>,
}

impl ComplexPoleSum {
    pub fn new(weights: Vec<Complex64>, poles: Vec<Complex64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(WdError::InvalidInput(
                "pole sum needs at least one term".into(),
            ));
        }
        if weights.len() != poles.len() {
            return Err(WdError::InvalidInput(format!(
                "weights ({}) and poles ({}) differ in length",
                weights.len(),
                poles.len()
            )));
        }
        for (j, a) in weights.iter().enumerate() {
            if !(a.re.is_finite() && a.im.is_finite()) || *a == Complex64::new(0.0, 0.0) {
                return Err(WdError::InvalidInput(format!(
                    "weight a[{j}] = {a} must be finite and nonzero"
                )));
            }
        }
        for (j, p) in poles.iter().enumerate() {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(WdError::InvalidInput(format!("pole λ[{j}] = {p} is not finite")));
            }
            if let Some(i) = poles[..j].iter().position(|q| q == p) {
                return Err(WdError::InvalidInput(format!(
                    "poles must be pairwise distinct: λ[{i}] = λ[{j}] = {p}"
                )));
            }
        }
        Ok(Self { weights, poles })
    }

    /// Convenience constructor from real weights and poles.
    pub fn from_real(weights: &[f64], poles: &[f64]) -> Result<Self> {
        Self::new(
            weights.iter().map(|&a| a.into()).collect(),
            poles.iter().map(|&p| p.into()).collect(),
        )
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// `Σ a_j`, compensated.
    pub fn weight_sum(&self) -> Complex64 {
        self.weights.iter().copied().collect::<ComplexCompensatedSum>().value()
    }

    /// Whether every weight is real and all share one sign. Under this
    /// hypothesis every zero lies in the convex hull of the poles.
    pub fn has_same_sign_real_weights(&self) -> bool {
        let real = self.weights.iter().all(|a| a.im == 0.0);
        real && (self.weights.iter().all(|a| a.re > 0.0) || self.weights.iter().all(|a| a.re < 0.0))
    }

    /// Entry-wise complex conjugate of the sum.
    pub fn conj(&self) -> Self {
        Self {
            weights: self.weights.iter().map(|a| a.conj()).collect(),
            poles: self.poles.iter().map(|p| p.conj()).collect(),
        }
    }
}

/// Evaluates `Σ a_j/(λ_j − z)` in declaration order.
pub fn eval_complex_sum(sum: &ComplexPoleSum, z: Complex64) -> Result<Complex64> {
    if sum.poles.contains(&z) {
        return Err(WdError::PoleHit { z });
    }
    Ok(sum
        .weights
        .iter()
        .zip(&sum.poles)
        .map(|(&a, &p)| a / (p - z))
        .collect::<ComplexCompensatedSum>()
        .value())
}
