use std::time::Instant;

use num_complex::Complex64;
use thiserror::Error;

use wd_core::grid::default_grid;
use wd_core::operator::{identity_residual, CMatrix, DEFAULT_SEPARATION_MARGIN};
use wd_core::{
    apply_pole_sum, apply_series, hull_check, invert, left_inverse_general,
    left_inverse_real, partial_fraction_inverse_with, separation_check, verify_expansion,
    verify_general, ComplexPoleSum, ForbiddenRegion, InverseOptions, MatrixOperator, RealWDSeries,
    WdError,
};

use crate::doc::{
    ExpansionDoc, HullDoc, Kind, ProblemSpec, ResultReport, Scalar, SeparationDoc, VerifyReport,
};

pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] WdError),
    #[error("eigenvalue {eigenvalue} is {distance:e} from the pole region (margin {margin:e})")]
    Separation {
        eigenvalue: Complex64,
        distance: f64,
        margin: f64,
    },
    #[error("{what} {residual:e} exceeds tolerance {tol:e}")]
    Residual { what: &'static str, residual: f64, tol: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Invalid(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
            CliError::Separation { .. } => 3,
            CliError::Residual { .. } => 4,
        }
    }
}

/// A report to write, plus the failure it carries (if any). Reports are
/// written even when a check fails so the numbers can be inspected.
pub struct Outcome<T> {
    pub report: T,
    pub failure: Option<CliError>,
}

/// The function a problem describes, in the most specific form its data allows.
pub enum Series {
    Real(RealWDSeries),
    Complex(ComplexPoleSum),
}

impl Series {
    pub fn poles(&self) -> Vec<Complex64> {
        match self {
            Series::Real(s) => s.poles().iter().map(|&p| p.into()).collect(),
            Series::Complex(s) => s.poles().to_vec(),
        }
    }
}

fn all_real(xs: &[Scalar]) -> Option<Vec<f64>> {
    xs.iter().map(|x| x.real()).collect()
}

fn complex_sum(spec: &ProblemSpec) -> Result<ComplexPoleSum, CliError> {
    if spec.tail_sum.is_some_and(|t| t > 0.0) {
        return Err(CliError::Invalid("tail_sum is only meaningful for real_series".into()));
    }
    Ok(ComplexPoleSum::new(
        spec.coefficients.iter().map(|c| c.value()).collect(),
        spec.poles.iter().map(|p| p.value()).collect(),
    )?)
}

fn real_series(spec: &ProblemSpec) -> Result<RealWDSeries, CliError> {
    let coefficients = all_real(&spec.coefficients)
        .ok_or_else(|| CliError::Invalid("real_series coefficients must be real".into()))?;
    let poles =
        all_real(&spec.poles).ok_or_else(|| CliError::Invalid("real_series poles must be real".into()))?;
    let series = RealWDSeries::new(coefficients, poles)?;
    match (spec.tail_sum, spec.pole_sup) {
        (Some(t), Some(sup)) => Ok(series.with_tail(t, sup)?),
        (Some(t), None) if t > 0.0 => Err(CliError::Invalid("tail_sum > 0 requires pole_sup".into())),
        _ => Ok(series),
    }
}

pub fn build_series(spec: &ProblemSpec) -> Result<Series, CliError> {
    match spec.kind {
        Kind::RealSeries => real_series(spec).map(Series::Real),
        Kind::ComplexSum => complex_sum(spec).map(Series::Complex),
        // Operators take the real path whenever the data qualify for it.
        Kind::Operator => match real_series(spec) {
            Ok(s) => Ok(Series::Real(s)),
            Err(_) => complex_sum(spec).map(Series::Complex),
        },
    }
}

fn build_matrix(spec: &ProblemSpec) -> Result<MatrixOperator, CliError> {
    let rows = spec
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Invalid("kind \"operator\" requires \"matrix\"".into()))?;
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(CliError::Invalid(format!(
            "matrix must be square: {n} rows but a row of length {}",
            bad.len()
        )));
    }
    let entries = CMatrix::from_fn(n, n, |i, j| rows[i][j].value());
    Ok(MatrixOperator::new(entries)?)
}

fn grid_or_default(spec: &ProblemSpec, poles: &[Complex64], zeros: &[Complex64]) -> Vec<Complex64> {
    match &spec.grid {
        Some(g) => g.iter().map(|z| z.value()).collect(),
        None => {
            let singular: Vec<Complex64> = poles.iter().chain(zeros).copied().collect();
            default_grid(&singular)
        }
    }
}

fn tolerance(spec: &ProblemSpec, cli: Option<f64>) -> f64 {
    cli.or(spec.tolerances.as_ref().and_then(|t| t.residual))
        .unwrap_or(DEFAULT_RESIDUAL_TOL)
}

struct Inverted {
    expansion: ExpansionDoc,
    residual: f64,
    hull: Option<HullDoc>,
    warnings: Vec<String>,
}

fn invert_series(
    series: &Series,
    spec: &ProblemSpec,
    cluster_radius: Option<f64>,
) -> Result<Inverted, CliError> {
    let mut warnings = vec![];
    match series {
        Series::Real(s) => {
            let e = invert(s)?;
            let zeros: Vec<Complex64> = e.terms.iter().map(|t| t.t.into()).collect();
            let grid = grid_or_default(spec, &series.poles(), &zeros);
            let residual = verify_expansion(s, &e, &grid)?;
            Ok(Inverted {
                expansion: (&e).into(),
                residual,
                hull: None,
                warnings,
            })
        }
        Series::Complex(s) => {
            let radius = cluster_radius.or(spec.tolerances.as_ref().and_then(|t| t.cluster_radius));
            let options = InverseOptions {
                cluster_radius: radius,
                ..InverseOptions::default()
            };
            let e = partial_fraction_inverse_with(s, &options)?;
            let clusters = e.zeros();
            let report = hull_check(s, &clusters);
            if !report.ok {
                warnings.push("a zero lies outside the convex hull of the poles".to_string());
            }
            if e.groups.iter().any(|g| g.multiplicity > 1) {
                warnings.push("multiple zeros present; higher-order coefficients are less accurate".into());
            }
            let zeros: Vec<Complex64> = clusters.iter().map(|c| c.t).collect();
            let grid = grid_or_default(spec, &series.poles(), &zeros);
            let residual = verify_general(s, &e, &grid)?;
            Ok(Inverted {
                expansion: (&e).into(),
                residual,
                hull: Some(HullDoc {
                    vertices: report.hull.iter().map(|&z| z.into()).collect(),
                    distances: report.distances,
                    hypothesis_holds: report.hypothesis_holds,
                    ok: report.ok,
                }),
                warnings,
            })
        }
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn run_invert(
    spec: &ProblemSpec,
    tol: Option<f64>,
    cluster_radius: Option<f64>,
) -> Result<Outcome<ResultReport>, CliError> {
    let start = Instant::now();
    let series = build_series(spec)?;
    let tol = tolerance(spec, tol);
    let inv = invert_series(&series, spec, cluster_radius)?;
    let failure = (inv.residual > tol).then_some(CliError::Residual {
        what: "residual",
        residual: inv.residual,
        tol,
    });
    Ok(Outcome {
        report: ResultReport {
            kind: spec.kind,
            expansion: inv.expansion,
            residual: Some(inv.residual),
            hull: inv.hull,
            separation: None,
            identity_residual: None,
            warnings: inv.warnings,
            timing_ms: elapsed_ms(start),
        },
        failure,
    })
}

pub fn run_operator(spec: &ProblemSpec, margin: Option<f64>) -> Result<Outcome<ResultReport>, CliError> {
    let start = Instant::now();
    if spec.kind != Kind::Operator {
        return Err(CliError::Invalid(format!(
            "wd operator needs kind \"operator\", got {:?}",
            spec.kind
        )));
    }
    let a = build_matrix(spec)?;
    let series = build_series(spec)?;
    let margin = margin
        .or(spec.tolerances.as_ref().and_then(|t| t.separation_margin))
        .unwrap_or(DEFAULT_SEPARATION_MARGIN);
    let tol = tolerance(spec, None);

    let region = match &series {
        Series::Real(s) => ForbiddenRegion::for_series(s),
        Series::Complex(s) => ForbiddenRegion::for_pole_sum(s),
    };
    let sep = separation_check(&a, &region, margin);
    let separation = SeparationDoc {
        eigenvalues: sep.eigenvalues.iter().map(|&z| z.into()).collect(),
        min_distance: sep.min_distance,
        margin,
        ok: sep.ok,
    };
    if !sep.ok {
        // Without separation neither f(A) nor its inverse is defined.
        return Err(CliError::Separation {
            eigenvalue: sep.closest.unwrap_or_default(),
            distance: sep.min_distance,
            margin,
        });
    }

    let inv = invert_series(&series, spec, None)?;
    let (f_a, g_a) = match &series {
        Series::Real(s) => {
            let e = inv.expansion.to_real().expect("real path yields a real expansion");
            (apply_series(&a, s)?, left_inverse_real(&a, &e)?)
        }
        Series::Complex(s) => (apply_pole_sum(&a, s)?, left_inverse_general(&a, &inv.expansion.to_general())?),
    };
    let id_res = identity_residual(&(g_a.matrix() * f_a.matrix()));

    let failure = if id_res > tol {
        Some(CliError::Residual {
            what: "identity residual",
            residual: id_res,
            tol,
        })
    } else if inv.residual > tol {
        Some(CliError::Residual {
            what: "residual",
            residual: inv.residual,
            tol,
        })
    } else {
        None
    };
    Ok(Outcome {
        report: ResultReport {
            kind: spec.kind,
            expansion: inv.expansion,
            residual: Some(inv.residual),
            hull: inv.hull,
            separation: Some(separation),
            identity_residual: Some(id_res),
            warnings: inv.warnings,
            timing_ms: elapsed_ms(start),
        },
        failure,
    })
}

pub fn run_verify(
    expansion: &ExpansionDoc,
    spec: &ProblemSpec,
    tol: Option<f64>,
) -> Result<Outcome<VerifyReport>, CliError> {
    let series = build_series(spec)?;
    let tol = tolerance(spec, tol);
    let grid = grid_or_default(spec, &series.poles(), &expansion.zeros());
    let residual = match (&series, expansion.to_real()) {
        (Series::Real(s), Some(e)) => verify_expansion(s, &e, &grid)?,
        (Series::Real(s), None) => verify_general(&s.to_pole_sum(), &expansion.to_general(), &grid)?,
        (Series::Complex(s), _) => verify_general(s, &expansion.to_general(), &grid)?,
    };
    let ok = residual <= tol;
    Ok(Outcome {
        report: VerifyReport {
            residual,
            tolerance: tol,
            grid_points: grid.len(),
            ok,
        },
        failure: (!ok).then_some(CliError::Residual {
            what: "residual",
            residual,
            tol,
        }),
    })
}

/// Reads an expansion from either a full result report or a bare expansion.
pub fn parse_expansion(text: &str) -> Result<ExpansionDoc, serde_json::Error> {
    serde_json::from_str::<ResultReport>(text)
        .map(|r| r.expansion)
        .or_else(|_| serde_json::from_str::<ExpansionDoc>(text))
}
