//! Dense complex polynomials in ascending-degree coefficient order.

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Horner evaluation.
pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn nth_derivative(p: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..n).fold(p.to_vec(), |q, _| derivative(&q))
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len().max(b.len())];
    for (k, &x) in a.iter().enumerate() {
        out[k] += x;
    }
    for (k, &y) in b.iter().enumerate() {
        out[k] += y;
    }
    out
}

pub fn scale(p: &[Complex64], s: Complex64) -> Vec<Complex64> {
    p.iter().map(|&c| c * s).collect()
}

/// `Π (root − z)`: product of linear factors written in resolvent orientation.
pub fn from_reversed_roots(roots: &[Complex64]) -> Vec<Complex64> {
    roots
        .iter()
        .fold(vec![ONE], |acc, &r| mul(&acc, &[r, -ONE]))
}

/// `Π (z − root)^multiplicity`.
pub fn from_roots<'a>(roots: impl IntoIterator<Item = (&'a Complex64, usize)>) -> Vec<Complex64> {
    let mut acc = vec![ONE];
    for (&r, m) in roots {
        for _ in 0..m {
            acc = mul(&acc, &[-r, ONE]);
        }
    }
    acc
}

/// Coefficients of `p(t + w)` as a polynomial in `w` (repeated synthetic division).
pub fn taylor_shift(p: &[Complex64], t: Complex64) -> Vec<Complex64> {
    let mut q = p.to_vec();
    let n = q.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            let hi = q[k + 1];
            q[k] += t * hi;
        }
    }
    q
}

/// Drops trailing (highest-degree) coefficients that are exactly zero.
pub fn trim(p: &[Complex64]) -> &[Complex64] {
    let len = p.iter().rposition(|c| *c != ZERO).map_or(0, |k| k + 1);
    &p[..len]
}

pub fn degree(p: &[Complex64]) -> Option<usize> {
    trim(p).len().checked_sub(1)
}

/// All roots of `p`, as eigenvalues of the companion matrix of the monic
/// normalization. Constant (or zero) polynomials have no roots.
pub fn roots(p: &[Complex64]) -> Vec<Complex64> {
    let p = trim(p);
    let Some(deg) = p.len().checked_sub(1) else {
        return vec![];
    };
    if deg == 0 {
        return vec![];
    }
    let lead = p[deg];
    if deg == 1 {
        return vec![-p[0] / lead];
    }
    let mut companion = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = ONE;
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -p[i] / lead;
    }
    let schur = nalgebra::Schur::new(companion);
    let (_, t) = schur.unpack();
    (0..deg).map(|i| t[(i, i)]).collect()
}

/// Newton iteration on `p` from `start`; returns the best iterate found.
pub fn newton(p: &[Complex64], start: Complex64, max_steps: usize) -> Complex64 {
    let dp = derivative(p);
    let mut z = start;
    let mut best = eval(p, z).norm();
    for _ in 0..max_steps {
        if best == 0.0 {
            break;
        }
        let d = eval(&dp, z);
        if d == ZERO {
            break;
        }
        let next = z - eval(p, z) / d;
        let value = eval(p, next).norm();
        if !(value < best) {
            break;
        }
        z = next;
        best = value;
    }
    z
}
