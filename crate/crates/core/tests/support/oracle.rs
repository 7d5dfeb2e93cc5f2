//! Exact partial-fraction oracle over Gaussian rationals.
//!
//! Instances are built from their zeros: pick rational poles, rational zeros
//! with multiplicities and a leading coefficient, and derive the weights
//! `a_j = P(λ_j) / Π_{i≠j}(λ_i − λ_j)` exactly. The expansion of `Q/P` then
//! follows from exact polynomial division and exact Taylor expansion at each
//! known zero. Nothing here touches floating point until `to_c64`.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;
pub type QC = Complex<Rat>;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn qc(re: Rat, im: Rat) -> QC {
    Complex::new(re, im)
}

pub fn qr(num: i64, den: i64) -> QC {
    qc(rat(num, den), Rat::zero())
}

pub fn to_c64(z: &QC) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

fn zero() -> QC {
    QC::zero()
}

fn one() -> QC {
    QC::one()
}

fn neg(z: &QC) -> QC {
    zero() - z.clone()
}

fn is_zero(z: &QC) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub fn trim(mut p: Vec<QC>) -> Vec<QC> {
    while p.len() > 1 && is_zero(p.last().unwrap()) {
        p.pop();
    }
    p
}

pub fn mul(a: &[QC], b: &[QC]) -> Vec<QC> {
    let mut out = vec![zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

pub fn add(a: &[QC], b: &[QC]) -> Vec<QC> {
    let mut out = vec![zero(); a.len().max(b.len())];
    for (k, x) in a.iter().enumerate() {
        out[k] = out[k].clone() + x.clone();
    }
    for (k, y) in b.iter().enumerate() {
        out[k] = out[k].clone() + y.clone();
    }
    out
}

pub fn eval(p: &[QC], z: &QC) -> QC {
    p.iter().rev().fold(zero(), |acc, c| acc * z.clone() + c.clone())
}

/// Long division `a = q·b + r`, `deg r < deg b`.
pub fn divrem(a: &[QC], b: &[QC]) -> (Vec<QC>, Vec<QC>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![zero()], r);
    }
    let mut q = vec![zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let coef = r[k + db].clone() / lead.clone();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = r[k + i].clone() - coef.clone() * bi.clone();
        }
        q[k] = coef;
    }
    r.truncate(db.max(1));
    (q, trim(r))
}

/// `p(t + w)` as a polynomial in `w`.
pub fn taylor_shift(p: &[QC], t: &QC) -> Vec<QC> {
    let mut q = p.to_vec();
    let n = q.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            q[k] = q[k].clone() + t.clone() * q[k + 1].clone();
        }
    }
    q
}

/// `Π(λ − z)` over the given points.
pub fn reversed_product(points: &[QC]) -> Vec<QC> {
    points
        .iter()
        .fold(vec![one()], |acc, p| mul(&acc, &[p.clone(), neg(&one())]))
}

/// `lead·Π(z − t)^m`.
pub fn from_zeros(zeros: &[(QC, usize)], lead: &QC) -> Vec<QC> {
    let mut acc = vec![lead.clone()];
    for (t, m) in zeros {
        for _ in 0..*m {
            acc = mul(&acc, &[neg(t), one()]);
        }
    }
    acc
}

/// Weights of the pole sum whose numerator is `lead·Π(z − t)^m`.
pub fn weights_for(poles: &[QC], zeros: &[(QC, usize)], lead: &QC) -> Vec<QC> {
    let p = from_zeros(zeros, lead);
    poles
        .iter()
        .enumerate()
        .map(|(j, lj)| {
            let denom = poles
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(one(), |acc, (_, li)| acc * (li.clone() - lj.clone()));
            eval(&p, lj) / denom
        })
        .collect()
}

/// `P = Σ a_j Π_{i≠j}(λ_i − z)`.
pub fn numerator(poles: &[QC], weights: &[QC]) -> Vec<QC> {
    let mut p = vec![zero()];
    for (j, a) in weights.iter().enumerate() {
        let others: Vec<QC> = poles
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, l)| l.clone())
            .collect();
        let term: Vec<QC> = reversed_product(&others).into_iter().map(|c| c * a.clone()).collect();
        p = add(&p, &term);
    }
    trim(p)
}

#[derive(Debug, Clone)]
pub struct ExactGroup {
    pub t: QC,
    pub multiplicity: usize,
    /// Coefficients of `(t − z)^{-k}`, `k = 1..=multiplicity`.
    pub coefficients: Vec<QC>,
}

#[derive(Debug, Clone)]
pub struct ExactExpansion {
    pub alpha: QC,
    pub beta: QC,
    pub groups: Vec<ExactGroup>,
}

/// Exact expansion of `1/f` for `f = Σ a_j/(λ_j − z)` whose numerator
/// factors as `lead·Π(z − t)^m` over the supplied zeros.
///
/// Panics if the zeros do not factor the numerator exactly.
pub fn exact_expansion(poles: &[QC], weights: &[QC], zeros: &[(QC, usize)]) -> ExactExpansion {
    let q = reversed_product(poles);
    let p = numerator(poles, weights);
    let lead = p.last().unwrap().clone();
    assert_eq!(trim(from_zeros(zeros, &lead)), p, "zeros do not factor the numerator");

    let (quot, rem) = divrem(&q, &p);
    let quot = trim(quot);
    assert!(quot.len() <= 2);
    let alpha = quot[0].clone();
    let beta = quot.get(1).cloned().unwrap_or_else(zero);

    let groups = zeros
        .iter()
        .map(|(t, m)| {
            let mut s = p.clone();
            for _ in 0..*m {
                let (qq, rr) = divrem(&s, &[neg(t), one()]);
                assert!(rr.iter().all(is_zero));
                s = qq;
            }
            let num = taylor_shift(&rem, t);
            let den = taylor_shift(&s, t);
            let mut d: Vec<QC> = vec![];
            for l in 0..*m {
                let mut acc = num.get(l).cloned().unwrap_or_else(zero);
                for i in 1..=l {
                    if let Some(di) = den.get(i) {
                        acc -= di.clone() * d[l - i].clone();
                    }
                }
                d.push(acc / den[0].clone());
            }
            let coefficients = (1..=*m)
                .map(|k| if k % 2 == 0 { d[m - k].clone() } else { neg(&d[m - k]) })
                .collect();
            ExactGroup {
                t: t.clone(),
                multiplicity: *m,
                coefficients,
            }
        })
        .collect();
    ExactExpansion { alpha, beta, groups }
}

/// Exact `Σ a_j λ_j / (Σ a_j)²` and `−1/Σ a_j`, for cross-checking.
pub fn closed_form_linear_part(poles: &[QC], weights: &[QC]) -> (QC, QC) {
    let total = weights.iter().fold(zero(), |acc, a| acc + a.clone());
    let moment = weights
        .iter()
        .zip(poles)
        .fold(zero(), |acc, (a, l)| acc + a.clone() * l.clone());
    (moment / (total.clone() * total.clone()), neg(&(one() / total)))
}

pub fn is_nonzero(z: &QC) -> bool {
    !is_zero(z)
}

pub fn abs_sq(z: &QC) -> Rat {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn abs_sq_lt(z: &QC, bound: &Rat) -> bool {
    abs_sq(z) < bound.clone()
}

pub fn re_positive(z: &QC) -> bool {
    z.re.is_positive()
}
