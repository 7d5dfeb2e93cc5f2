//! Inversion of finite complex pole sums `f(z) = Σ a_j/(λ_j − z)`.
//!
//! `f = P/Q` with `Q = Π(λ_j − z)` of degree `n` and `P` of degree `n − 1`,
//! so `g = 1/f = Q/P` has a first-order pole at infinity. Splitting off the
//! polynomial part and expanding the remainder in partial fractions gives
//!
//! ```text
//! g(z) = α + βz + Σ_j Σ_{k=1..m_j} c_{jk}/(t_j − z)^k
//! ```
//!
//! where `t_j` are the zeros of `f` with multiplicities `m_j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, WdError};
use crate::hull::ConvexHull;
use crate::poly;
use crate::real_inverse::check_grid;
use crate::series::{eval_complex_sum, ComplexPoleSum};
use crate::sum::ComplexCompensatedSum;

/// Relative threshold on `|Σ a_j|` against `Σ |a_j|`.
pub const DEGENERATE_LEADING_TOL: f64 = 1e-12;
/// Default clustering radius is `DEFAULT_RELATIVE_RADIUS·(1 + max|root|)`.
pub const DEFAULT_RELATIVE_RADIUS: f64 = 1e-6;
/// Above this deflation conditioning the Taylor-shift path hands over to the
/// confluent Vandermonde solve.
pub const DEFLATION_CONDITION_LIMIT: f64 = 1e8;
/// Zeros may sit this far outside the pole hull and still count as inside.
pub const HULL_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Common-denominator form `f = P/Q`, ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPair {
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
}

impl PolyPair {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::eval(&self.numerator, z) / poly::eval(&self.denominator, z)
    }
}

/// A zero of `f` with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCluster {
    pub t: Complex64,
    pub multiplicity: usize,
}

/// Principal part of `1/f` at one zero: `Σ_k coefficients[k−1]/(t − z)^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroGroup {
    pub t: Complex64,
    pub multiplicity: usize,
    pub coefficients: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralInverseExpansion {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub groups: Vec<ZeroGroup>,
}

impl GeneralInverseExpansion {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.alpha + self.beta * z + self.eval_fractional(z)
    }

    pub fn eval_fractional(&self, z: Complex64) -> Complex64 {
        let mut acc = ComplexCompensatedSum::new();
        for group in &self.groups {
            let r = 1.0 / (group.t - z);
            let mut power = r;
            for &c in &group.coefficients {
                acc.add(c * power);
                power *= r;
            }
        }
        acc.value()
    }

    pub fn zeros(&self) -> Vec<ZeroCluster> {
        self.groups
            .iter()
            .map(|g| ZeroCluster {
                t: g.t,
                multiplicity: g.multiplicity,
            })
            .collect()
    }
}

/// How the principal-part coefficients are extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientMethod {
    /// Taylor shift with deflation, falling back to the Vandermonde solve
    /// when deflation is ill-conditioned.
    #[default]
    Auto,
    TaylorShift,
    ConfluentVandermonde,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InverseOptions {
    /// Absolute clustering radius; `None` uses `1e-6·(1 + max|root|)`.
    pub cluster_radius: Option<f64>,
    pub method: CoefficientMethod,
}

pub fn to_poly_pair(sum: &ComplexPoleSum) -> Result<PolyPair> {
    check_leading(sum)?;
    let poles = sum.poles();
    let denominator = poly::from_reversed_roots(poles);
    let mut numerator = vec![ZERO; poles.len()];
    for (j, &a) in sum.weights().iter().enumerate() {
        let others: Vec<Complex64> = poles
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &p)| p)
            .collect();
        let term = poly::from_reversed_roots(&others);
        for (k, c) in term.into_iter().enumerate() {
            numerator[k] += a * c;
        }
    }
    Ok(PolyPair {
        numerator,
        denominator,
    })
}

fn check_leading(sum: &ComplexPoleSum) -> Result<Complex64> {
    let total = sum.weight_sum();
    let mass: f64 = sum.weights().iter().map(|a| a.norm()).sum();
    if total.norm() <= DEGENERATE_LEADING_TOL * mass {
        return Err(WdError::DegenerateLeading { sum: total });
    }
    Ok(total)
}

/// Default clustering radius for a set of computed roots.
pub fn cluster_radius(roots: &[Complex64]) -> f64 {
    let max = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    DEFAULT_RELATIVE_RADIUS * (1.0 + max)
}

/// Roots of the numerator grouped into clusters of nearby roots.
pub fn find_zero_clusters(pair: &PolyPair) -> Vec<ZeroCluster> {
    find_zero_clusters_with_radius(pair, None).0
}

/// Clustering with an explicit radius. Returns the clusters and the radius used.
pub fn find_zero_clusters_with_radius(
    pair: &PolyPair,
    radius: Option<f64>,
) -> (Vec<ZeroCluster>, f64) {
    let p = poly::trim(&pair.numerator);
    let roots = poly::roots(p);
    let r = radius.unwrap_or_else(|| cluster_radius(&roots));
    (cluster_roots(p, &roots, r), r)
}

fn cluster_roots(p: &[Complex64], roots: &[Complex64], radius: f64) -> Vec<ZeroCluster> {
    // Single linkage via union-find.
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![vec![]; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        members[root].push(i);
    }
    let mut clusters: Vec<ZeroCluster> = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| {
            let multiplicity = m.len();
            let mean = m.iter().map(|&i| roots[i]).sum::<Complex64>() / multiplicity as f64;
            let target = poly::nth_derivative(p, multiplicity - 1);
            let refined = poly::newton(&target, mean, 30);
            let t = if (refined - mean).norm() <= radius {
                refined
            } else {
                mean
            };
            ZeroCluster { t, multiplicity }
        })
        .collect();
    clusters.sort_by(|a, b| a.t.re.total_cmp(&b.t.re).then(a.t.im.total_cmp(&b.t.im)));
    clusters
}

/// Position of each zero relative to the convex hull of the poles.
#[derive(Debug, Clone, PartialEq)]
pub struct HullReport {
    pub hull: Vec<Complex64>,
    /// Signed distance per zero, negative inside.
    pub distances: Vec<f64>,
    /// All weights real with a common sign, so the zeros must lie in the hull.
    pub hypothesis_holds: bool,
    /// False only when the hypothesis holds and some zero is outside the hull
    /// by more than [`HULL_TOLERANCE`].
    pub ok: bool,
}

pub fn hull_check(sum: &ComplexPoleSum, zeros: &[ZeroCluster]) -> HullReport {
    let hull = ConvexHull::new(sum.poles());
    let distances: Vec<f64> = zeros.iter().map(|z| hull.signed_distance(z.t)).collect();
    let hypothesis_holds = sum.has_same_sign_real_weights();
    let ok = !hypothesis_holds || distances.iter().all(|&d| d <= HULL_TOLERANCE);
    HullReport {
        hull: hull.vertices().to_vec(),
        distances,
        hypothesis_holds,
        ok,
    }
}

/// Closed-form linear part of `1/f`: `α = Σ a_j λ_j / (Σ a_j)²`, `β = −1/Σ a_j`.
pub fn linear_part(sum: &ComplexPoleSum) -> Result<(Complex64, Complex64)> {
    let total = check_leading(sum)?;
    let moment = sum
        .weights()
        .iter()
        .zip(sum.poles())
        .map(|(&a, &p)| a * p)
        .collect::<ComplexCompensatedSum>()
        .value();
    Ok((moment / (total * total), -1.0 / total))
}

pub fn partial_fraction_inverse(sum: &ComplexPoleSum) -> Result<GeneralInverseExpansion> {
    partial_fraction_inverse_with(sum, &InverseOptions::default())
}

pub fn partial_fraction_inverse_with(
    sum: &ComplexPoleSum,
    options: &InverseOptions,
) -> Result<GeneralInverseExpansion> {
    let pair = to_poly_pair(sum)?;
    let (alpha, beta) = linear_part(sum)?;
    let (clusters, radius) = find_zero_clusters_with_radius(&pair, options.cluster_radius);
    check_separation(&pair, &clusters, radius)?;

    let remainder = fractional_numerator(&pair, alpha, beta);
    let coefficients = match options.method {
        CoefficientMethod::TaylorShift => taylor_coefficients(&pair.numerator, &remainder, &clusters).0,
        CoefficientMethod::ConfluentVandermonde => {
            vandermonde_coefficients(&pair.numerator, &remainder, &clusters, radius)?
        }
        CoefficientMethod::Auto => {
            let (coefficients, condition) =
                taylor_coefficients(&pair.numerator, &remainder, &clusters);
            if condition > DEFLATION_CONDITION_LIMIT {
                vandermonde_coefficients(&pair.numerator, &remainder, &clusters, radius)?
            } else {
                coefficients
            }
        }
    };
    let groups = clusters
        .iter()
        .zip(coefficients)
        .map(|(c, coefficients)| ZeroGroup {
            t: c.t,
            multiplicity: c.multiplicity,
            coefficients,
        })
        .collect();
    Ok(GeneralInverseExpansion {
        alpha,
        beta,
        groups,
    })
}

fn check_separation(pair: &PolyPair, clusters: &[ZeroCluster], radius: f64) -> Result<()> {
    for (i, a) in clusters.iter().enumerate() {
        for b in &clusters[i + 1..] {
            if (a.t - b.t).norm() <= 2.0 * radius {
                let p = poly::trim(&pair.numerator);
                let merged = cluster_roots(p, &poly::roots(p), 2.0 * radius);
                return Err(WdError::ClusterAmbiguous {
                    radius,
                    fine: clusters.to_vec(),
                    merged,
                });
            }
        }
    }
    Ok(())
}

/// `N = Q − (α + βz)P`, truncated to degree `n − 2` where the top two
/// coefficients cancel analytically.
fn fractional_numerator(pair: &PolyPair, alpha: Complex64, beta: Complex64) -> Vec<Complex64> {
    let linear = poly::mul(&[alpha, beta], &pair.numerator);
    let mut n = poly::add(&pair.denominator, &poly::scale(&linear, Complex64::new(-1.0, 0.0)));
    let keep = pair.denominator.len().saturating_sub(2);
    n.truncate(keep);
    n
}

/// Principal parts by Taylor expansion of `N/S_j` at each zero, where
/// `S_j = P/(z − t_j)^{m_j}` comes from deflating the shifted numerator.
/// Also returns the worst deflation conditioning encountered.
fn taylor_coefficients(
    p: &[Complex64],
    n: &[Complex64],
    clusters: &[ZeroCluster],
) -> (Vec<Vec<Complex64>>, f64) {
    let mut worst = 1.0f64;
    let coefficients = clusters
        .iter()
        .map(|cluster| {
            let m = cluster.multiplicity;
            let shifted = poly::taylor_shift(poly::trim(p), cluster.t);
            let deflated = &shifted[m..];
            let scale: f64 = shifted.iter().map(|c| c.norm()).sum();
            worst = worst.max(scale / deflated[0].norm());
            let num = poly::taylor_shift(n, cluster.t);
            let series = series_quotient(&num, deflated, m);
            (1..=m)
                .map(|k| {
                    let d = series[m - k];
                    if k % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect();
    (coefficients, worst)
}

/// First `order` Taylor coefficients of `num(w)/den(w)` at `w = 0`.
fn series_quotient(num: &[Complex64], den: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(order);
    for l in 0..order {
        let mut acc = num.get(l).copied().unwrap_or(ZERO);
        for i in 1..=l {
            if let Some(&d) = den.get(i) {
                acc -= d * out[l - i];
            }
        }
        out.push(acc / den[0]);
    }
    out
}

/// Principal parts from the linear system `Σ c_jk·P(z)/(t_j − z)^k = N(z)`,
/// matching coefficients of degree `0..n−2`, with `P` rebuilt from its zeros.
fn vandermonde_coefficients(
    p: &[Complex64],
    n: &[Complex64],
    clusters: &[ZeroCluster],
    radius: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let lead = *poly::trim(p).last().unwrap_or(&ZERO);
    let unknowns: usize = clusters.iter().map(|c| c.multiplicity).sum();
    if unknowns == 0 {
        return Ok(vec![]);
    }
    let mut matrix = DMatrix::<Complex64>::zeros(unknowns, unknowns);
    let mut col = 0;
    for (j, cluster) in clusters.iter().enumerate() {
        let others = poly::from_roots(
            clusters
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, c)| (&c.t, c.multiplicity)),
        );
        for k in 1..=cluster.multiplicity {
            // P/(t − z)^k = lead·(−1)^k·(z − t)^{m−k}·Π_{i≠j}(z − t_i)^{m_i}
            let sign = if k % 2 == 0 { lead } else { -lead };
            let basis = poly::scale(
                &poly::mul(&others, &poly::from_roots([(&cluster.t, cluster.multiplicity - k)])),
                sign,
            );
            for (row, &c) in basis.iter().enumerate().take(unknowns) {
                matrix[(row, col)] = c;
            }
            col += 1;
        }
    }
    let rhs = DVector::from_iterator(unknowns, (0..unknowns).map(|k| n.get(k).copied().unwrap_or(ZERO)));
    let solution = matrix
        .lu()
        .solve(&rhs)
        // Singular only when two centers coincide.
        .ok_or(WdError::ClusterAmbiguous {
            radius,
            fine: clusters.to_vec(),
            merged: vec![],
        })?;
    let mut out = vec![];
    let mut idx = 0;
    for cluster in clusters {
        out.push(solution.as_slice()[idx..idx + cluster.multiplicity].to_vec());
        idx += cluster.multiplicity;
    }
    Ok(out)
}

/// Maximum of `|f(z)·g(z) − 1|` over the grid.
pub fn verify_general(
    sum: &ComplexPoleSum,
    expansion: &GeneralInverseExpansion,
    grid: &[Complex64],
) -> Result<f64> {
    let singular: Vec<Complex64> = sum
        .poles()
        .iter()
        .copied()
        .chain(expansion.groups.iter().map(|g| g.t))
        .collect();
    check_grid(grid, &singular)?;
    let mut worst = 0.0f64;
    for &z in grid {
        let f = eval_complex_sum(sum, z)?;
        worst = worst.max((f * expansion.eval(z) - 1.0).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        c(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn double_zero() -> ComplexPoleSum {
        ComplexPoleSum::from_real(&[-0.5, 4.0, -4.5], &[0.0, -1.0, -2.0]).unwrap()
    }

    fn root_of_unity() -> ComplexPoleSum {
        let lam = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        ComplexPoleSum::new(vec![r(-1.0); 3], vec![lam, r(1.0), r(0.0)]).unwrap()
    }

    #[test]
    fn poly_pair_examples() {
        let pair = to_poly_pair(&ComplexPoleSum::from_real(&[1.0, 1.0], &[1.0, 2.0]).unwrap()).unwrap();
        assert_eq!(pair.numerator, vec![r(3.0), r(-2.0)]);
        assert_eq!(pair.denominator, vec![r(2.0), r(-3.0), r(1.0)]);

        let pair = to_poly_pair(&ComplexPoleSum::from_real(&[1.0], &[0.0]).unwrap()).unwrap();
        assert_eq!(pair.numerator, vec![r(1.0)]);
        assert_eq!(pair.denominator, vec![r(0.0), r(-1.0)]);

        let pair = to_poly_pair(&double_zero()).unwrap();
        assert!(close(pair.eval(r(3.0)), r(1.0 / 15.0), 1e-15));
        // Leading coefficient is (−1)^{n−1}·Σa = −1; numerator is −(z − 1)².
        assert_eq!(pair.numerator, vec![r(-1.0), r(2.0), r(-1.0)]);
    }

    #[test]
    fn degenerate_leading_is_rejected() {
        let s = ComplexPoleSum::from_real(&[1.0, -1.0], &[0.0, 1.0]).unwrap();
        assert!(matches!(to_poly_pair(&s), Err(WdError::DegenerateLeading { .. })));
        assert!(matches!(partial_fraction_inverse(&s), Err(WdError::DegenerateLeading { .. })));
    }

    #[test]
    fn clusters_examples() {
        let z = find_zero_clusters(&to_poly_pair(&root_of_unity()).unwrap());
        let lam = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 2);
        assert!(close(z[0].t, (1.0 + lam) / 3.0, 1e-8));

        let pair = PolyPair {
            numerator: vec![r(3.0), r(-2.0)],
            denominator: vec![r(1.0)],
        };
        assert_eq!(find_zero_clusters(&pair), vec![ZeroCluster { t: r(1.5), multiplicity: 1 }]);

        let pair = PolyPair {
            numerator: vec![r(1.0), r(-2.0), r(1.0)],
            denominator: vec![r(1.0)],
        };
        let z = find_zero_clusters(&pair);
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 2);
        assert!(close(z[0].t, r(1.0), 1e-12));

        let constant = PolyPair {
            numerator: vec![r(2.0)],
            denominator: vec![r(1.0)],
        };
        assert!(find_zero_clusters(&constant).is_empty());
    }

    #[test]
    fn hull_examples() {
        let s = ComplexPoleSum::new(vec![r(1.0); 3], vec![r(0.0), r(1.0), c(0.0, 1.0)]).unwrap();
        let zeros = find_zero_clusters(&to_poly_pair(&s).unwrap());
        let report = hull_check(&s, &zeros);
        assert!(report.hypothesis_holds && report.ok);
        assert_eq!(report.distances.len(), 2);
        assert!(report.distances.iter().all(|&d| d < 0.0));

        let s = ComplexPoleSum::from_real(&[1.0], &[0.0]).unwrap();
        let report = hull_check(&s, &[]);
        assert!(report.ok && report.distances.is_empty());

        let s = root_of_unity();
        let zeros = find_zero_clusters(&to_poly_pair(&s).unwrap());
        let report = hull_check(&s, &zeros);
        assert!(report.hypothesis_holds && report.ok);
        assert!(report.distances[0] < 0.0);
    }

    #[test]
    fn mixed_sign_weights_do_not_claim_hull_property() {
        let report = hull_check(&double_zero(), &[ZeroCluster { t: r(1.0), multiplicity: 2 }]);
        assert!(!report.hypothesis_holds);
        assert!(report.ok);
        assert!((report.distances[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn double_zero_expansion() {
        let e = partial_fraction_inverse(&double_zero()).unwrap();
        assert!(close(e.alpha, r(5.0), 1e-12));
        assert!(close(e.beta, r(1.0), 1e-12));
        assert_eq!(e.groups.len(), 1);
        let g = &e.groups[0];
        assert_eq!(g.multiplicity, 2);
        assert!(close(g.t, r(1.0), 1e-12));
        assert!(close(g.coefficients[0], r(-11.0), 1e-9));
        assert!(close(g.coefficients[1], r(6.0), 1e-9));
        assert!(close(e.eval(r(3.0)), r(15.0), 1e-10));
    }

    #[test]
    fn two_term_matches_real_path() {
        let e = partial_fraction_inverse(&ComplexPoleSum::from_real(&[1.0, 1.0], &[1.0, 2.0]).unwrap())
            .unwrap();
        assert!(close(e.alpha, r(0.75), 1e-15));
        assert!(close(e.beta, r(-0.5), 1e-15));
        assert_eq!(e.groups.len(), 1);
        assert!(close(e.groups[0].t, r(1.5), 1e-14));
        assert!(close(e.groups[0].coefficients[0], r(-0.125), 1e-14));
    }

    #[test]
    fn single_term_has_no_groups() {
        let e = partial_fraction_inverse(&ComplexPoleSum::from_real(&[2.0], &[3.0]).unwrap()).unwrap();
        assert_eq!(e.alpha, r(1.5));
        assert_eq!(e.beta, r(-0.5));
        assert!(e.groups.is_empty());
    }

    #[test]
    fn both_coefficient_paths_agree() {
        for sum in [double_zero(), root_of_unity()] {
            let taylor = partial_fraction_inverse_with(
                &sum,
                &InverseOptions { method: CoefficientMethod::TaylorShift, ..Default::default() },
            )
            .unwrap();
            let vander = partial_fraction_inverse_with(
                &sum,
                &InverseOptions { method: CoefficientMethod::ConfluentVandermonde, ..Default::default() },
            )
            .unwrap();
            for (a, b) in taylor.groups.iter().zip(&vander.groups) {
                for (x, y) in a.coefficients.iter().zip(&b.coefficients) {
                    assert!(close(*x, *y, 1e-9), "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let s = double_zero();
        let e = partial_fraction_inverse(&s).unwrap();
        let grid = [r(3.0), r(-4.0), c(0.0, 2.0), c(5.0, 1.0)];
        assert!(verify_general(&s, &e, &grid).unwrap() <= 1e-11);

        let s = ComplexPoleSum::from_real(&[1.0], &[0.0]).unwrap();
        let e = partial_fraction_inverse(&s).unwrap();
        assert!(verify_general(&s, &e, &grid).unwrap() <= 1e-15);

        let s = root_of_unity();
        let e = partial_fraction_inverse(&s).unwrap();
        assert!(matches!(
            verify_general(&s, &e, &[c(0.5, 0.3)]),
            Err(WdError::GridTooClose { .. })
        ));
    }

    #[test]
    fn root_of_unity_random_grid() {
        use rand::{Rng, SeedableRng};
        let s = root_of_unity();
        let e = partial_fraction_inverse(&s).unwrap();
        let singular: Vec<Complex64> =
            s.poles().iter().copied().chain(e.groups.iter().map(|g| g.t)).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut grid = vec![];
        while grid.len() < 100 {
            let z = Complex64::from_polar(10.0 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
            if singular.iter().all(|&p| (z - p).norm() >= 0.05) {
                grid.push(z);
            }
        }
        assert!(verify_general(&s, &e, &grid).unwrap() <= 1e-9);
    }

    #[test]
    fn ambiguous_clusters_are_reported() {
        let pair_sum = ComplexPoleSum::from_real(&[1.0, 1.0, 1.0], &[-1.0, 0.0, 1.0]).unwrap();
        let opts = InverseOptions { cluster_radius: Some(0.7), ..Default::default() };
        // Zeros of this sum are ±1/√3 ≈ ±0.577, 1.155 apart: separate at r = 0.7 (> 1.155/2).
        match partial_fraction_inverse_with(&pair_sum, &opts) {
            Err(WdError::ClusterAmbiguous { fine, merged, .. }) => {
                assert_eq!(fine.len(), 2);
                assert_eq!(merged.len(), 1);
                assert_eq!(merged[0].multiplicity, 2);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_equivariance() {
        let s = ComplexPoleSum::new(
            vec![c(1.0, 0.5), c(2.0, -0.3), c(0.7, 0.0)],
            vec![c(0.0, 1.0), c(1.0, -0.5), c(-1.0, 0.2)],
        )
        .unwrap();
        let (e, ec) = (
            partial_fraction_inverse(&s).unwrap(),
            partial_fraction_inverse(&s.conj()).unwrap(),
        );
        assert!(close(ec.alpha, e.alpha.conj(), 1e-13));
        assert!(close(ec.beta, e.beta.conj(), 1e-13));
        for g in &e.groups {
            let h = ec
                .groups
                .iter()
                .find(|h| close(h.t, g.t.conj(), 1e-10))
                .expect("conjugate zero");
            for (x, y) in g.coefficients.iter().zip(&h.coefficients) {
                assert!(close(*y, x.conj(), 1e-10));
            }
        }
    }
}
