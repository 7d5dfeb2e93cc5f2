//! Convex hulls of points in the complex plane.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex polygon with vertices in counter-clockwise order. Degenerate hulls
/// (a point or a segment) keep one or two vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHull {
    vertices: Vec<Complex64>,
}

impl ConvexHull {
    /// Andrew's monotone chain. Collinear boundary points are dropped.
    pub fn new(points: &[Complex64]) -> Self {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<Complex64> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Complex64> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        // Collinear input leaves just the two extremes.
        lower.extend(upper);
        Self { vertices: lower }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Distance from `z` to the hull boundary, negative for strict interior
    /// points of a two-dimensional hull.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => (z - self.vertices[0]).norm(),
            2 => segment_distance(z, self.vertices[0], self.vertices[1]),
            n => {
                let mut boundary = f64::INFINITY;
                let mut inside = true;
                for i in 0..n {
                    let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                    boundary = boundary.min(segment_distance(z, a, b));
                    if cross(a, b, z) < 0.0 {
                        inside = false;
                    }
                }
                if inside {
                    -boundary
                } else {
                    boundary
                }
            }
        }
    }

    /// Unsigned distance from `z` to the hull (zero inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        self.signed_distance(z).max(0.0)
    }
}

pub(crate) fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let s = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * s)).norm()
}
