//! Inversion of real Wolff-Denjoy series with positive coefficients.
//!
//! For `f(z) = Σ c_k/(λ_k − z)` with `c_k > 0` and increasing real poles,
//! `f` is strictly increasing on every pole gap and runs from −∞ to +∞
//! across it, so each gap `(λ_k, λ_{k+1})` holds exactly one simple zero
//! `t_k`. The reciprocal expands as
//!
//! ```text
//! 1/f(z) = α + βz − Σ b_n/(t_n − z),   b_n = 1/f′(t_n) > 0,
//! α = Σ c_k λ_k / (Σ c_k)²,            β = −1/Σ c_k.
//! ```

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, WdError};
use crate::series::{eval_derivative_real, eval_real, RealWDSeries};
use crate::sum::{ComplexCompensatedSum, CompensatedSum};

/// Initial relative distance of the bracket ends from the gap's poles.
const BRACKET_SHRINK: f64 = 1e-9;
const MAX_BRACKET_ATTEMPTS: usize = 60;
const BISECTION_TOL: f64 = 1e-14;
const MAX_NEWTON_STEPS: usize = 50;

/// Minimum distance between grid points and singularities in verification.
pub const GRID_SAFETY_DISTANCE: f64 = 0.05;

/// One pole `b_n/(t_n − z)` of the fractional part of `1/f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseTerm {
    pub t: f64,
    pub b: f64,
}

/// `1/f(z) = α + βz − Σ b_n/(t_n − z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealInverseExpansion {
    pub alpha: f64,
    pub beta: f64,
    pub terms: Vec<InverseTerm>,
}

impl RealInverseExpansion {
    /// Evaluates the expansion at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = ComplexCompensatedSum::new();
        acc.add(self.alpha.into());
        acc.add(self.beta * z);
        for term in &self.terms {
            acc.add(-term.b / (term.t - z));
        }
        acc.value()
    }

    /// The fractional part `−Σ b_n/(t_n − z)` alone.
    pub fn eval_fractional(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|term| -term.b / (term.t - z))
            .collect::<ComplexCompensatedSum>()
            .value()
    }
}

/// Closed-form linear part `(α, β)` of `1/f`.
pub fn compute_alpha_beta(series: &RealWDSeries) -> Result<(f64, f64)> {
    if series.tail_sum() > 0.0 {
        return Err(WdError::TailPresent {
            tail_sum: series.tail_sum(),
        });
    }
    let mass: f64 = series.coefficients().iter().copied().collect::<CompensatedSum>().value();
    let moment = series
        .coefficients()
        .iter()
        .zip(series.poles())
        .map(|(&c, &p)| c * p)
        .collect::<CompensatedSum>()
        .value();
    Ok((moment / (mass * mass), -1.0 / mass))
}

/// Locates the unique zero of `f` in the gap between `poles[gap]` and
/// `poles[gap + 1]` (zero-based).
///
/// The bracket starts a relative `1e-9` of the gap width inside each pole
/// and is adjusted until `f(lo) < 0 < f(hi)`; bisection then shrinks it to
/// `1e-14·max(1, |t|)` and a bounded Newton polish finishes inside it.
pub fn isolate_zero(series: &RealWDSeries, gap: usize) -> Result<f64> {
    let poles = series.poles();
    if gap + 1 >= poles.len() {
        return Err(WdError::InvalidInput(format!(
            "gap index {gap} out of range for {} poles",
            poles.len()
        )));
    }
    let (left, right) = (poles[gap], poles[gap + 1]);
    let no_sign_change = || WdError::NoSignChange {
        gap,
        lo: left,
        hi: right,
    };
    let f = |x: f64| series.value_at(x);

    let (mut lo, mut hi) = bracket(left, right, &f).ok_or_else(no_sign_change)?;
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }

    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_TOL * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(newton_polish(series, 0.5 * (lo + hi), lo, hi))
}

/// Finds `lo < hi` strictly inside `(left, right)` with `f(lo) <= 0 <= f(hi)`.
fn bracket(left: f64, right: f64, f: &impl Fn(f64) -> f64) -> Option<(f64, f64)> {
    let width = right - left;
    let mut eps = BRACKET_SHRINK * width;
    // Grow the offset until both ends are representable and distinct from the poles.
    let mut attempts = 0;
    while !(left + eps > left && right - eps < right && left + eps < right - eps) {
        attempts += 1;
        eps *= 2.0;
        if attempts >= MAX_BRACKET_ATTEMPTS || eps >= 0.5 * width {
            return None;
        }
    }
    // A zero closer to a pole than the offset needs a tighter end on that side.
    let lo = tighten(eps, |e| left + e, |x| f(x) <= 0.0, |x| x > left)?;
    let hi = tighten(eps, |e| right - e, |x| f(x) >= 0.0, |x| x < right)?;
    (lo < hi).then_some((lo, hi))
}

fn tighten(
    mut eps: f64,
    place: impl Fn(f64) -> f64,
    good: impl Fn(f64) -> bool,
    inside: impl Fn(f64) -> bool,
) -> Option<f64> {
    for _ in 0..MAX_BRACKET_ATTEMPTS {
        let x = place(eps);
        if !inside(x) {
            return None;
        }
        if good(x) {
            return Some(x);
        }
        eps *= 0.5;
    }
    None
}

fn newton_polish(series: &RealWDSeries, start: f64, lo: f64, hi: f64) -> f64 {
    let mut t = start;
    let mut ft = series.value_at(t).abs();
    for _ in 0..MAX_NEWTON_STEPS {
        if ft == 0.0 {
            break;
        }
        let step = series.value_at(t) / series.derivative_at(t);
        let next = t - step;
        if !(next >= lo && next <= hi) {
            break;
        }
        let fnext = series.value_at(next).abs();
        if fnext >= ft {
            break;
        }
        t = next;
        ft = fnext;
    }
    t
}

/// Full expansion of `1/f` for a tail-free series.
pub fn invert(series: &RealWDSeries) -> Result<RealInverseExpansion> {
    let (alpha, beta) = compute_alpha_beta(series)?;
    let gaps = series.len() - 1;
    let mut terms = (0..gaps)
        .into_par_iter()
        .map(|gap| {
            let t = isolate_zero(series, gap)?;
            let slope = eval_derivative_real(series, t)?.value;
            Ok(InverseTerm { t, b: 1.0 / slope })
        })
        .collect::<Result<Vec<_>>>()?;
    terms.sort_by(|a, b| a.t.total_cmp(&b.t));
    debug_assert_eq!(terms.len(), gaps);
    Ok(RealInverseExpansion { alpha, beta, terms })
}

/// Maximum of `|f(z)·g(z) − 1|` over the grid, where `g` is the expansion.
pub fn verify_expansion(
    series: &RealWDSeries,
    expansion: &RealInverseExpansion,
    grid: &[Complex64],
) -> Result<f64> {
    let singular: Vec<Complex64> = series
        .poles()
        .iter()
        .chain(expansion.terms.iter().map(|term| &term.t))
        .map(|&x| x.into())
        .collect();
    check_grid(grid, &singular)?;
    let mut worst = 0.0f64;
    for &z in grid {
        let f = eval_real(series, z)?.value;
        worst = worst.max((f * expansion.eval(z) - 1.0).norm());
    }
    Ok(worst)
}

pub(crate) fn check_grid(grid: &[Complex64], singular: &[Complex64]) -> Result<()> {
    for &z in grid {
        for &s in singular {
            let distance = (z - s).norm();
            if distance < GRID_SAFETY_DISTANCE {
                return Err(WdError::GridTooClose {
                    z,
                    singular: s,
                    distance,
                    min_distance: GRID_SAFETY_DISTANCE,
                });
            }
        }
    }
    Ok(())
}
