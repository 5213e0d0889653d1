//! Pre-Schwarzian and Schwarzian calculus on Taylor data.
//!
//! For a locally univalent `f` the pre-Schwarzian is `A = f''/f'` and the
//! Schwarzian is obtained from it by `Psi(A) = A' - A^2/2`; Moebius maps are
//! exactly the kernel of the Schwarzian. The relevant Bergman-type norms are
//!
//! ```text
//! ||A||^2 = integral |A|^2 dA                (pre-Schwarzian data)
//! ||S||^2 = integral (1-|z|^2)^2 |S|^2 dA    (Schwarzian data)
//! ```
//!
//! with the sup/L^2 comparison `sup (1-|z|^2)^2 |S| <= sqrt(12/pi) ||S||`.
//! The quasiconformal reflection attached to `S` has dilatation
//!
//! ```text
//! m(1/conj(z)) = -((1-|z|^2)^2 / 2) (z/conj(z))^2 S(z),
//! ```
//!
//! whose exterior L^2 energy is exactly a quarter of `||S||^2`; both the
//! identity and the resulting energy ratio 4 are pinned down by quadrature
//! checks here.

use num_complex::Complex64;

use crate::diff::harmonic_l2_weight;
use crate::error::{Error, Result};
use crate::exec;
use crate::grid;
use crate::quad::{self, QuadratureRule};
use crate::series::PowerSeries;

/// Modelling coordinates of a normalized map: the pre-Schwarzian series
/// together with `f'(0)`.
#[derive(Debug, Clone)]
pub struct WpCoordinates {
    pre_schwarzian: PowerSeries,
    deriv_at_zero: Complex64,
}

impl WpCoordinates {
    pub fn new(pre_schwarzian: PowerSeries, deriv_at_zero: Complex64) -> Result<Self> {
        if deriv_at_zero.norm() == 0.0 {
            return Err(Error::NotLocallyUnivalent);
        }
        Ok(WpCoordinates {
            pre_schwarzian,
            deriv_at_zero,
        })
    }

    /// Coordinates of a Taylor map `f` with `f'(0) != 0`.
    pub fn from_map(f: &PowerSeries) -> Result<Self> {
        let a = pre_schwarzian(f)?;
        Ok(WpCoordinates {
            pre_schwarzian: a,
            deriv_at_zero: f.coeff(1),
        })
    }

    pub fn pre_schwarzian(&self) -> &PowerSeries {
        &self.pre_schwarzian
    }

    pub fn deriv_at_zero(&self) -> Complex64 {
        self.deriv_at_zero
    }
}

/// `A = f''/f'` through degree `N - 2` (where `N` is the truncation degree
/// of `f`). Fails when `f'(0) = 0`.
pub fn pre_schwarzian(f: &PowerSeries) -> Result<PowerSeries> {
    if f.coeff(1).norm() == 0.0 {
        return Err(Error::NotLocallyUnivalent);
    }
    let fp = f.derivative();
    let fpp = fp.derivative();
    let out_degree = f.degree().saturating_sub(2);
    fpp.div(&fp, out_degree)
}

/// `Psi(psi) = (psi' - psi^2/2, psi(0))`: the Schwarzian built from
/// pre-Schwarzian data, paired with the value at 0 that the Schwarzian
/// forgets.
pub fn psi_map(psi: &PowerSeries) -> (PowerSeries, Complex64) {
    let degree = psi.degree().saturating_sub(1);
    let d = psi.derivative().truncated(degree);
    let sq = psi.mul_truncated(psi, degree);
    let s = d.sub(&sq.scale(Complex64::new(0.5, 0.0)));
    (s, psi.coeff(0))
}

/// Schwarzian derivative `S(f) = (f''/f')' - (f''/f')^2 / 2` through degree
/// `N - 3`.
pub fn schwarzian(f: &PowerSeries) -> Result<PowerSeries> {
    let a = pre_schwarzian(f)?;
    Ok(psi_map(&a).0)
}

/// Exact `L^2(dA)` norm of pre-Schwarzian data:
/// `sqrt(sum |a_n|^2 pi/(n+1))`.
pub fn a21_norm(a: &PowerSeries) -> f64 {
    exec::compensated_sum(
        a.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() * std::f64::consts::PI / (n as f64 + 1.0)),
    )
    .sqrt()
}

/// Exact weighted norm of Schwarzian data:
/// `sqrt(sum |s_n|^2 w_n)` with `w_n = 2 pi/((n+1)(n+2)(n+3))`.
pub fn a22_norm(s: &PowerSeries) -> f64 {
    exec::compensated_sum(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() * harmonic_l2_weight(n)),
    )
    .sqrt()
}

/// Quadrature twin of [`a21_norm`], for cross-checks.
pub fn a21_norm_quad(a: &PowerSeries, rule: &QuadratureRule) -> Result<f64> {
    let v = quad::integrate(rule, |z| Complex64::new(a.eval(z).norm_sqr(), 0.0))?;
    Ok(v.re.max(0.0).sqrt())
}

/// Quadrature twin of [`a22_norm`], for cross-checks.
pub fn a22_norm_quad(s: &PowerSeries, rule: &QuadratureRule) -> Result<f64> {
    let v = quad::integrate(rule, |z| {
        let w = 1.0 - z.norm_sqr();
        Complex64::new(w * w * s.eval(z).norm_sqr(), 0.0)
    })?;
    Ok(v.re.max(0.0).sqrt())
}

/// Outcome of the sup/L^2 comparison for Schwarzian data.
#[derive(Debug, Clone, Copy)]
pub struct SupBound {
    /// `sup (1-|z|^2)^2 |S(z)|` over the disk.
    pub sup: f64,
    /// `sqrt(12/pi) ||S||`.
    pub bound: f64,
    /// `sup / bound`, `0` when both vanish.
    pub ratio: f64,
}

/// Evaluate the comparison `sup (1-|z|^2)^2 |S| <= sqrt(12/pi) ||S||` on a
/// polar scan of the stated resolution.
pub fn schwarzian_sup_bound(s: &PowerSeries, n_radial: usize, n_angular: usize) -> SupBound {
    let f = |z: Complex64| {
        let w = 1.0 - z.norm_sqr();
        w * w * s.eval(z).norm()
    };
    let sup = grid::sup_unit_disk(&f, n_radial, n_angular, 3);
    let bound = (12.0 / std::f64::consts::PI).sqrt() * a22_norm(s);
    let ratio = if bound > 0.0 { sup / bound } else { 0.0 };
    SupBound { sup, bound, ratio }
}

/// Dilatation of the quasiconformal reflection attached to `S`, expressed
/// at the interior point `z`:
/// `m(1/conj(z)) = -((1-|z|^2)^2 / 2) (z/conj(z))^2 S(z)`.
/// Defined to be `0` at `z = 0` (the factor `(z/conj(z))^2` is unimodular).
pub fn ahlfors_weill_dilatation(s: &PowerSeries, z: Complex64) -> Result<Complex64> {
    if z.norm_sqr() >= 1.0 {
        return Err(Error::OutsideDomain {
            point: z,
            domain: "unit disk",
        });
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = 1.0 - z.norm_sqr();
    let phase = (z / z.conj()).powi(2);
    Ok(-(w * w / 2.0) * phase * s.eval(z))
}

/// Both sides of the reflection energy identity
/// `integral |m(1/conj(z))|^2 / (1-|z|^2)^2 dA = (1/4) integral (1-|z|^2)^2 |S|^2 dA`,
/// computed by two independent quadratures (the right side uses an enlarged
/// rule so the agreement is not an artifact of shared nodes).
pub fn reflection_l2_identity(s: &PowerSeries, rule: &QuadratureRule) -> Result<(f64, f64)> {
    let lhs = quad::integrate(rule, |z| {
        let m = ahlfors_weill_dilatation(s, z).expect("rule nodes are interior");
        let w = 1.0 - z.norm_sqr();
        Complex64::new(m.norm_sqr() / (w * w), 0.0)
    })?
    .re;

    let rule2 = quad::disk_rule(rule.n_radial() + 11, rule.n_angular() + 24, 1.0)?;
    let rhs = 0.25
        * quad::integrate(&rule2, |z| {
            let w = 1.0 - z.norm_sqr();
            Complex64::new(w * w * s.eval(z).norm_sqr(), 0.0)
        })?
        .re;
    Ok((lhs, rhs))
}

/// Ratio `||S||^2 / ||m||_2^2` of Schwarzian energy to reflection
/// dilatation energy; identically 4 on reflection pairs. The numerator is
/// coefficient-exact, the denominator is quadrature, so the value doubles
/// as an end-to-end check of the dilatation plumbing. Fails with
/// [`Error::UndefinedRatio`] when the dilatation energy vanishes.
pub fn dilatation_energy_ratio(s: &PowerSeries, rule: &QuadratureRule) -> Result<f64> {
    let denom = quad::integrate(rule, |z| {
        let m = ahlfors_weill_dilatation(s, z).expect("rule nodes are interior");
        let w = 1.0 - z.norm_sqr();
        Complex64::new(m.norm_sqr() / (w * w), 0.0)
    })?
    .re;
    if denom <= 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let num = a22_norm(s).powi(2);
    Ok(num / denom)
}

/// Solve `A' - A^2/2 = S` degree by degree with `A(0) = a0`.
pub fn solve_pre_schwarzian(s: &PowerSeries, a0: Complex64, degree: usize) -> PowerSeries {
    let mut a = vec![Complex64::new(0.0, 0.0); degree + 1];
    a[0] = a0;
    for n in 0..degree {
        // (n+1) a_{n+1} = s_n + (1/2) sum_{j=0}^{n} a_j a_{n-j}
        let mut conv = Complex64::new(0.0, 0.0);
        for j in 0..=n {
            conv += a[j] * a[n - j];
        }
        a[n + 1] = (s.coeff(n) + 0.5 * conv) / (n as f64 + 1.0);
    }
    PowerSeries::new(a)
}

/// Reconstruct the normalized map from its pre-Schwarzian:
/// `f' = exp(integral A)`, `f(0) = 0`, `f'(0) = 1`.
pub fn map_from_pre_schwarzian(a: &PowerSeries, degree: usize) -> PowerSeries {
    let log_fp = a.antiderivative().truncated(degree.saturating_sub(1));
    let fp = log_fp.exp(degree.saturating_sub(1));
    fp.antiderivative().truncated(degree)
}
