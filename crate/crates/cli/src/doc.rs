//! Input and output documents. Complex numbers are written as `[re, im]`;
//! plain numbers are accepted wherever a complex value is expected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use wd_core::{GeneralInverseExpansion, InverseTerm, RealInverseExpansion, ZeroGroup};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> Complex64 {
        match self {
            Scalar::Real(x) => x.into(),
            Scalar::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    /// The real value, if the imaginary part is exactly zero.
    pub fn real(self) -> Option<f64> {
        let z = self.value();
        (z.im == 0.0).then_some(z.re)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            Scalar::Real(z.re)
        } else {
            Scalar::Complex([z.re, z.im])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    RealSeries,
    ComplexSum,
    Operator,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub kind: Kind,
    #[serde(alias = "weights")]
    pub coefficients: Vec<Scalar>,
    pub poles: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole_sup: Option<f64>,
    /// Rows of a square matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

/// `[t, multiplicity, [c_1, ..., c_m]]`.
pub type GroupDoc = (Scalar, usize, Vec<Scalar>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpansionDoc {
    Real(RealExpansionDoc),
    General(GeneralExpansionDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealExpansionDoc {
    pub alpha: f64,
    pub beta: f64,
    /// `[t_n, b_n]` pairs.
    pub terms: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralExpansionDoc {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub groups: Vec<GroupDoc>,
}

impl From<&RealInverseExpansion> for ExpansionDoc {
    fn from(e: &RealInverseExpansion) -> Self {
        ExpansionDoc::Real(RealExpansionDoc {
            alpha: e.alpha,
            beta: e.beta,
            terms: e.terms.iter().map(|t| [t.t, t.b]).collect(),
        })
    }
}

impl From<&GeneralInverseExpansion> for ExpansionDoc {
    fn from(e: &GeneralInverseExpansion) -> Self {
        ExpansionDoc::General(GeneralExpansionDoc {
            alpha: e.alpha.into(),
            beta: e.beta.into(),
            groups: e
                .groups
                .iter()
                .map(|g| {
                    (
                        g.t.into(),
                        g.multiplicity,
                        g.coefficients.iter().map(|&c| c.into()).collect(),
                    )
                })
                .collect(),
        })
    }
}

impl ExpansionDoc {
    pub fn to_real(&self) -> Option<RealInverseExpansion> {
        match self {
            ExpansionDoc::Real(r) => Some(RealInverseExpansion {
                alpha: r.alpha,
                beta: r.beta,
                terms: r.terms.iter().map(|&[t, b]| InverseTerm { t, b }).collect(),
            }),
            ExpansionDoc::General(_) => None,
        }
    }

    /// Any expansion in the general form; real terms become simple zeros
    /// with coefficient `−b_n`.
    pub fn to_general(&self) -> GeneralInverseExpansion {
        match self {
            ExpansionDoc::Real(r) => GeneralInverseExpansion {
                alpha: r.alpha.into(),
                beta: r.beta.into(),
                groups: r
                    .terms
                    .iter()
                    .map(|&[t, b]| ZeroGroup {
                        t: t.into(),
                        multiplicity: 1,
                        coefficients: vec![(-b).into()],
                    })
                    .collect(),
            },
            ExpansionDoc::General(g) => GeneralInverseExpansion {
                alpha: g.alpha.value(),
                beta: g.beta.value(),
                groups: g
                    .groups
                    .iter()
                    .map(|(t, m, cs)| ZeroGroup {
                        t: t.value(),
                        multiplicity: *m,
                        coefficients: cs.iter().map(|c| c.value()).collect(),
                    })
                    .collect(),
            },
        }
    }

    pub fn zeros(&self) -> Vec<Complex64> {
        self.to_general().groups.iter().map(|g| g.t).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HullDoc {
    pub vertices: Vec<Scalar>,
    pub distances: Vec<f64>,
    pub hypothesis_holds: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationDoc {
    pub eigenvalues: Vec<Scalar>,
    pub min_distance: f64,
    pub margin: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultReport {
    pub kind: Kind,
    pub expansion: ExpansionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<SeparationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_residual: Option<f64>,
    #[serde(default)]
    pub warnings: Vec<String>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub residual: f64,
    pub tolerance: f64,
    pub grid_points: usize,
    pub ok: bool,
}

/// Pretty JSON with a trailing newline; the canonical form of every document.
pub fn to_canonical<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
