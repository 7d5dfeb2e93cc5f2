//! Verification grids.

use num_complex::Complex64;

pub const DEFAULT_GRID_POINTS: usize = 64;

/// `points` equally spaced points on the circle `|z| = radius`.
pub fn circle(radius: f64, points: usize) -> Vec<Complex64> {
    (0..points)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / points as f64))
        .collect()
}

/// 64 points on `|z| = 2·(1 + max|s|)` over the given singular points
/// (poles, and zeros of `f` when known). With positive weights the zeros
/// lie in the pole hull and the radius depends on the poles alone.
pub fn default_grid(singular: &[Complex64]) -> Vec<Complex64> {
    let max = singular.iter().map(|p| p.norm()).fold(0.0, f64::max);
    circle(2.0 * (1.0 + max), DEFAULT_GRID_POINTS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_radius() {
        let g = default_grid(&[Complex64::new(-3.0, 4.0)]);
        assert_eq!(g.len(), 64);
        assert!(g.iter().all(|z| (z.norm() - 12.0).abs() < 1e-12));
    }
}
