#![allow(dead_code)]

pub mod oracle;

use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Uniform point in the disk `|z| < radius`.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `count` points in `|z| <= radius` keeping `min_distance` from every singular point.
pub fn safe_points<R: Rng>(
    rng: &mut R,
    count: usize,
    radius: f64,
    singular: &[Complex64],
    min_distance: f64,
) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = disk_point(rng, radius);
        if singular.iter().all(|&s| (z - s).norm() >= min_distance) {
            out.push(z);
        }
    }
    out
}

/// `|x − y| <= tol·max(1, |y|)`.
pub fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * y.norm().max(1.0)
}
