//! Truncated Taylor series with complex coefficients.
//!
//! Every operation here is prefix-exact: coefficient `k` of a result depends
//! only on coefficients `0..=k` of the inputs. Truncating a series therefore
//! never corrupts the coefficients that are kept, it only shortens the
//! window, which is what makes degree-by-degree recurrences (reciprocals,
//! exponentials, Schwarzian solves) reliable.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients `c_0 + c_1 z + ... + c_N z^N`; `N` is the truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Wrap explicit coefficients; an empty vector is the zero series.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        PowerSeries { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        PowerSeries {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(c: Complex64, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `z^n`, carried to truncation degree `degree >= n`.
    pub fn monomial(n: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree.max(n));
        s.coeffs[n] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n` (zero beyond the truncation degree).
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Keep coefficients `0..=degree`, zero-padding if the series is shorter.
    pub fn truncated(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        coeffs.truncate(degree + 1);
        PowerSeries { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| c * n as f64)
            .collect();
        PowerSeries { coeffs }
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        for (n, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (n as f64 + 1.0));
        }
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Cauchy product carried to full degree `self.degree() + other.degree()`
    /// (exact for polynomials).
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, self.degree() + other.degree())
    }

    /// Cauchy product truncated at `degree`.
    pub fn mul_truncated(&self, other: &Self, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > degree {
                break;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j > degree {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }

    /// `1 / self` through `degree`, requiring `self(0) != 0`.
    pub fn reciprocal(&self, degree: usize) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.norm() == 0.0 {
            return Err(Error::Parameter(
                "reciprocal of a series vanishing at 0".into(),
            ));
        }
        let mut b = vec![Complex64::new(0.0, 0.0); degree + 1];
        b[0] = a0.inv();
        for k in 1..=degree {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeff(j) * b[k - j];
            }
            b[k] = -acc / a0;
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// `self / den` through `degree`, requiring `den(0) != 0`.
    pub fn div(&self, den: &Self, degree: usize) -> Result<Self> {
        let d0 = den.coeff(0);
        if d0.norm() == 0.0 {
            return Err(Error::Parameter("division by a series vanishing at 0".into()));
        }
        let mut c = vec![Complex64::new(0.0, 0.0); degree + 1];
        for k in 0..=degree {
            let mut acc = self.coeff(k);
            for j in 1..=k {
                acc -= den.coeff(j) * c[k - j];
            }
            c[k] = acc / d0;
        }
        Ok(PowerSeries { coeffs: c })
    }

    /// `exp(self)` through `degree`, via the ODE recurrence `g' = a' g`.
    pub fn exp(&self, degree: usize) -> Self {
        let mut g = vec![Complex64::new(0.0, 0.0); degree + 1];
        g[0] = self.coeff(0).exp();
        for k in 0..degree {
            // (k+1) g_{k+1} = sum_{j=0}^{k} (j+1) a_{j+1} g_{k-j}
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                acc += self.coeff(j + 1) * (j as f64 + 1.0) * g[k - j];
            }
            g[k + 1] = acc / (k as f64 + 1.0);
        }
        PowerSeries { coeffs: g }
    }

    /// Largest coefficient-wise distance to `other` (comparing the union of
    /// both windows).
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_matches_horner_expansion() {
        let s = PowerSeries::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]);
        let z = c(0.5, -0.25);
        let want = c(1.0, 0.0) + c(0.0, 2.0) * z + c(-3.0, 0.0) * z * z;
        assert_abs_diff_eq!((s.eval(z) - want).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn derivative_and_antiderivative_are_inverse() {
        let s = PowerSeries::new(vec![c(0.0, 0.0), c(2.0, 1.0), c(0.5, -3.0), c(1.0, 1.0)]);
        let back = s.derivative().antiderivative();
        assert!(s.max_coeff_distance(&back) < 1e-15);
    }

    #[test]
    fn product_against_reciprocal_is_one() {
        let s = PowerSeries::new(vec![c(2.0, 0.0), c(1.0, -1.0), c(0.25, 0.5), c(-0.3, 0.0)]);
        let r = s.reciprocal(12).unwrap();
        let prod = s.mul_truncated(&r, 12);
        assert_abs_diff_eq!((prod.coeff(0) - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-14);
        for k in 1..=12 {
            assert!(prod.coeff(k).norm() < 1e-13, "k={k}: {}", prod.coeff(k));
        }
    }

    #[test]
    fn reciprocal_requires_nonzero_constant_term() {
        let s = PowerSeries::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(s.reciprocal(4).is_err());
    }

    #[test]
    fn division_matches_geometric_series() {
        // 1 / (1 - z) = 1 + z + z^2 + ...
        let one = PowerSeries::constant(c(1.0, 0.0), 0);
        let den = PowerSeries::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        let q = one.div(&den, 10).unwrap();
        for k in 0..=10 {
            assert_abs_diff_eq!((q.coeff(k) - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn exp_matches_scalar_exponential() {
        // exp(a z) = sum a^n z^n / n!
        let a = c(0.3, -0.7);
        let s = PowerSeries::new(vec![c(0.0, 0.0), a]);
        let e = s.exp(15);
        let mut want = c(1.0, 0.0);
        for k in 0..=15 {
            assert!((e.coeff(k) - want).norm() < 1e-14, "k={k}");
            want *= a / (k as f64 + 1.0);
        }
    }

    #[test]
    fn truncation_is_prefix_exact_through_products() {
        let a = PowerSeries::new((0..8).map(|k| c(1.0 / (k as f64 + 1.0), 0.3 * k as f64)).collect());
        let b = PowerSeries::new((0..8).map(|k| c(0.2 * k as f64, -1.0 / (k as f64 + 2.0))).collect());
        let full = a.mul(&b);
        let cut = a.truncated(4).mul_truncated(&b.truncated(4), 4);
        for k in 0..=4 {
            assert!((full.coeff(k) - cut.coeff(k)).norm() < 1e-15);
        }
    }
}
