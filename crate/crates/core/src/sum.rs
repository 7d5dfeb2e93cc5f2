//! Compensated (Neumaier/Kahan) summation.

use num_complex::Complex64;

/// Running compensated sum of `f64` terms. Terms must be added in a fixed
/// order for results to be reproducible bit for bit.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of complex terms; real and imaginary parts carry
/// independent compensation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexCompensatedSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexCompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexCompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}
