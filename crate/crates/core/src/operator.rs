//! Functional calculus on dense complex matrices.
//!
//! `f(A) = Σ c_k R(λ_k, A)` with `R(λ, A) = (λI − A)^{-1}`, and its inverse
//! built from an expansion of `1/f`:
//!
//! ```text
//! f(A)^{-1} = αI + βA + Σ_j Σ_k c_{jk} R(t_j, A)^k
//! ```
//!
//! Resolvents are always computed by LU solves. Eigenvalues are only used
//! by the diagnostic checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, WdError};
use crate::hull::ConvexHull;
use crate::rational_inverse::GeneralInverseExpansion;
use crate::real_inverse::RealInverseExpansion;
use crate::series::{segment_distance, ComplexPoleSum, RealWDSeries};

/// Resolvent solves whose 1-norm condition number exceeds this fail.
pub const CONDITION_LIMIT: f64 = 1e14;
pub const DEFAULT_SEPARATION_MARGIN: f64 = 1e-6;
/// Tolerance for matching `aλ₂ + bλ₁` against an eigenvalue.
pub const EIGENVALUE_HIT_TOL: f64 = 1e-8;
/// Determinant magnitude at or below which a resolvent combination is singular.
pub const SINGULAR_DETERMINANT: f64 = 1e-10;

pub type CMatrix = DMatrix<Complex64>;

/// Square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    entries: CMatrix,
}

impl MatrixOperator {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() == 0 {
            return Err(WdError::InvalidInput("matrix must have dimension >= 1".into()));
        }
        if entries.nrows() != entries.ncols() {
            return Err(WdError::InvalidInput(format!(
                "matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(WdError::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_diagonal(diagonal: &[Complex64]) -> Result<Self> {
        Self::new(CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diagonal)))
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Result<Self> {
        let d: Vec<Complex64> = diagonal.iter().map(|&x| x.into()).collect();
        Self::from_diagonal(&d)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let (_, t) = nalgebra::Schur::new(self.entries.clone()).unpack();
        (0..self.dim()).map(|i| t[(i, i)]).collect()
    }

    fn wrap(entries: CMatrix) -> Self {
        Self { entries }
    }
}

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Distance of `I·f(A)`-style products from the identity, Frobenius norm.
pub fn identity_residual(product: &CMatrix) -> f64 {
    frobenius_norm(&(product - CMatrix::identity(product.nrows(), product.ncols())))
}

/// `R(λ, A) = (λI − A)^{-1}` by LU with partial pivoting.
pub fn resolvent(a: &MatrixOperator, lambda: Complex64) -> Result<MatrixOperator> {
    let d = a.dim();
    let shifted = CMatrix::identity(d, d) * lambda - &a.entries;
    let lu = shifted.clone().lu();
    let singular = || WdError::SingularResolvent {
        lambda,
        condition: f64::INFINITY,
    };
    if !lu.is_invertible() {
        return Err(singular());
    }
    let mut x = CMatrix::identity(d, d);
    if !lu.solve_mut(&mut x) || x.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(singular());
    }
    let condition = one_norm(&shifted) * one_norm(&x);
    if !(condition <= CONDITION_LIMIT) {
        return Err(WdError::SingularResolvent { lambda, condition });
    }
    Ok(MatrixOperator::wrap(x))
}

fn weighted_resolvent_sum(
    a: &MatrixOperator,
    terms: &[(Complex64, Complex64)],
) -> Result<CMatrix> {
    let resolvents = terms
        .par_iter()
        .map(|&(_, pole)| resolvent(a, pole))
        .collect::<Result<Vec<_>>>()?;
    let d = a.dim();
    let mut acc = CMatrix::zeros(d, d);
    for (r, &(w, _)) in resolvents.iter().zip(terms) {
        acc += &r.entries * w;
    }
    Ok(acc)
}

/// `f(A) = Σ c_k R(λ_k, A)` for a tail-free real series.
pub fn apply_series(a: &MatrixOperator, series: &RealWDSeries) -> Result<MatrixOperator> {
    if series.tail_sum() > 0.0 {
        return Err(WdError::TailPresent {
            tail_sum: series.tail_sum(),
        });
    }
    let terms: Vec<(Complex64, Complex64)> = series
        .coefficients()
        .iter()
        .zip(series.poles())
        .map(|(&c, &p)| (c.into(), p.into()))
        .collect();
    weighted_resolvent_sum(a, &terms).map(MatrixOperator::wrap)
}

/// `f(A) = Σ a_j R(λ_j, A)` for a finite complex pole sum.
pub fn apply_pole_sum(a: &MatrixOperator, sum: &ComplexPoleSum) -> Result<MatrixOperator> {
    let terms: Vec<(Complex64, Complex64)> = sum
        .weights()
        .iter()
        .copied()
        .zip(sum.poles().iter().copied())
        .collect();
    weighted_resolvent_sum(a, &terms).map(MatrixOperator::wrap)
}

/// An expansion `1/f(z) = α + βz + h(z)` whose fractional part `h` can be
/// applied to a matrix.
pub trait InverseExpansion {
    fn alpha(&self) -> Complex64;
    fn beta(&self) -> Complex64;
    /// `h(A)`, the bounded part of the inverse.
    fn fractional_part(&self, a: &MatrixOperator) -> Result<CMatrix>;
}

impl InverseExpansion for RealInverseExpansion {
    fn alpha(&self) -> Complex64 {
        self.alpha.into()
    }

    fn beta(&self) -> Complex64 {
        self.beta.into()
    }

    fn fractional_part(&self, a: &MatrixOperator) -> Result<CMatrix> {
        let terms: Vec<(Complex64, Complex64)> = self
            .terms
            .iter()
            .map(|term| ((-term.b).into(), term.t.into()))
            .collect();
        weighted_resolvent_sum(a, &terms)
    }
}

impl InverseExpansion for GeneralInverseExpansion {
    fn alpha(&self) -> Complex64 {
        self.alpha
    }

    fn beta(&self) -> Complex64 {
        self.beta
    }

    fn fractional_part(&self, a: &MatrixOperator) -> Result<CMatrix> {
        let resolvents = self
            .groups
            .par_iter()
            .map(|g| resolvent(a, g.t))
            .collect::<Result<Vec<_>>>()?;
        let d = a.dim();
        let mut acc = CMatrix::zeros(d, d);
        for (r, group) in resolvents.iter().zip(&self.groups) {
            let mut power = r.entries.clone();
            for (k, &c) in group.coefficients.iter().enumerate() {
                if k > 0 {
                    power = &power * &r.entries;
                }
                acc += &power * c;
            }
        }
        Ok(acc)
    }
}

/// `αI + βA + h(A)`.
pub fn left_inverse<E: InverseExpansion + ?Sized>(
    a: &MatrixOperator,
    expansion: &E,
) -> Result<MatrixOperator> {
    let d = a.dim();
    let mut out = expansion.fractional_part(a)?;
    out += CMatrix::identity(d, d) * expansion.alpha();
    out += &a.entries * expansion.beta();
    Ok(MatrixOperator::wrap(out))
}

/// `αI + βA − Σ b_n R(t_n, A)`.
pub fn left_inverse_real(a: &MatrixOperator, expansion: &RealInverseExpansion) -> Result<MatrixOperator> {
    left_inverse(a, expansion)
}

/// `αI + βA + Σ_j Σ_k c_{jk} R(t_j, A)^k`, powers by repeated multiplication.
pub fn left_inverse_general(
    a: &MatrixOperator,
    expansion: &GeneralInverseExpansion,
) -> Result<MatrixOperator> {
    left_inverse(a, expansion)
}

/// Set the spectrum must avoid.
#[derive(Debug, Clone, PartialEq)]
pub enum ForbiddenRegion {
    /// Real segment `[a, b]` holding all poles of a real series.
    Segment(f64, f64),
    /// Convex hull of the poles of a complex sum.
    Hull(ConvexHull),
}

impl ForbiddenRegion {
    pub fn for_series(series: &RealWDSeries) -> Self {
        let (a, b) = series.pole_segment();
        Self::Segment(a, b)
    }

    pub fn for_pole_sum(sum: &ComplexPoleSum) -> Self {
        Self::Hull(ConvexHull::new(sum.poles()))
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        match self {
            Self::Segment(a, b) => segment_distance(z, *a, *b),
            Self::Hull(h) => h.distance(z),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub eigenvalues: Vec<Complex64>,
    pub min_distance: f64,
    /// Eigenvalue attaining `min_distance`.
    pub closest: Option<Complex64>,
    pub margin: f64,
    pub ok: bool,
}

pub fn separation_check(a: &MatrixOperator, region: &ForbiddenRegion, margin: f64) -> SeparationReport {
    let eigenvalues = a.eigenvalues();
    let (closest, min_distance) = eigenvalues
        .iter()
        .map(|&z| (Some(z), region.distance(z)))
        .fold((None, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    SeparationReport {
        eigenvalues,
        min_distance,
        closest,
        margin,
        ok: min_distance > margin,
    }
}

/// Outcome of probing `aR(λ₁, A) + bR(λ₂, A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventPairReport {
    /// `‖aR₁ + bR₂ − R₁((aλ₂ + bλ₁)I − A)R₂‖_F`.
    pub factorization_residual: f64,
    pub determinant: Complex64,
    /// The point `aλ₂ + bλ₁` on the segment between the two poles.
    pub mixed_point: Complex64,
    pub eigenvalue_distance: f64,
    /// `mixed_point` is within [`EIGENVALUE_HIT_TOL`] of an eigenvalue.
    pub hits_eigenvalue: bool,
    /// `|determinant| <= SINGULAR_DETERMINANT`.
    pub singular: bool,
}

/// Checks the factorization
/// `aR(λ₁) + bR(λ₂) = R(λ₁)((aλ₂ + bλ₁)I − A)R(λ₂)` and whether the
/// combination is singular.
pub fn resolvent_pair_probe(
    a: &MatrixOperator,
    lambda1: Complex64,
    lambda2: Complex64,
    weight1: f64,
    weight2: f64,
) -> Result<ResolventPairReport> {
    if !(weight1 >= 0.0 && weight2 >= 0.0 && (weight1 + weight2 - 1.0).abs() <= 1e-12) {
        return Err(WdError::InvalidInput(format!(
            "weights must be nonnegative and sum to 1, got {weight1} and {weight2}"
        )));
    }
    let r1 = resolvent(a, lambda1)?;
    let r2 = resolvent(a, lambda2)?;
    let combination = &r1.entries * Complex64::from(weight1) + &r2.entries * Complex64::from(weight2);
    let mixed_point = weight1 * lambda2 + weight2 * lambda1;
    let d = a.dim();
    let middle = CMatrix::identity(d, d) * mixed_point - &a.entries;
    let factored = &r1.entries * middle * &r2.entries;
    let factorization_residual = frobenius_norm(&(&combination - factored));
    let determinant = combination.determinant();
    let eigenvalue_distance = a
        .eigenvalues()
        .iter()
        .map(|&mu| (mu - mixed_point).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(ResolventPairReport {
        factorization_residual,
        determinant,
        mixed_point,
        eigenvalue_distance,
        hits_eigenvalue: eigenvalue_distance <= EIGENVALUE_HIT_TOL,
        singular: determinant.norm() <= SINGULAR_DETERMINANT,
    })
}

/// `R'_t = αI + βR_t + h(A)` with `R_t = A(I + tA)^{-1}`, a regularized
/// replacement for `f(A)^{-1}` that avoids the unbounded `βA` term.
pub fn regularized_family<E: InverseExpansion + ?Sized>(
    a: &MatrixOperator,
    expansion: &E,
    t: f64,
) -> Result<MatrixOperator> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(WdError::InvalidInput(format!("t = {t} must be positive")));
    }
    // (I + tA)^{-1} = −(1/t)·R(−1/t, A)
    let r = resolvent(a, Complex64::from(-1.0 / t))?;
    let smoothed = &a.entries * &r.entries * Complex64::from(-1.0 / t);
    let d = a.dim();
    let mut out = expansion.fractional_part(a)?;
    out += CMatrix::identity(d, d) * expansion.alpha();
    out += smoothed * expansion.beta();
    Ok(MatrixOperator::wrap(out))
}
