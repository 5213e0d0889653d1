//! Weighted analysis on round annuli `1 < |z| < r`.
//!
//! For `f` holomorphic on the annulus, the weighted L^2 norm
//! `integral (1-|z|^2)^2 |f|^2 dA` splits over Laurent coefficients:
//!
//! ```text
//! integral_{A_r} (1-|z|^2)^2 |f|^2 dA = 2 pi sum_n |a_n|^2 I_n(r),
//! I_n(r) = (1/2) integral_1^{r^2} u^n (1-u)^2 du,
//! ```
//!
//! and the interior weighted sup over a smaller annulus `A_t` (`1 < t < r`)
//! is controlled by that norm with the explicit constant
//!
//! ```text
//! C(r,t) = (4/sqrt(2 pi)) * sqrt(r^2+t^2)/(r^2-t^2) * (1-t^2)^2/(r^2+3)
//!        + 4 sqrt(3/pi) * t .
//! ```
//!
//! The inner-annulus orientation `t < |z| < 1` is carried to this one by the
//! exact reindexing `g(w) = w^{-4} f(1/w)`, which preserves both the
//! weighted sup and the weighted L^2 norm pointwise; see
//! [`reflect_to_outer`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{self, RadialSpan};

/// Laurent polynomial window `sum_{n=n_min}^{n_max} a_n z^n`, valid on the
/// annulus `1 < |z| < r_outer`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    n_min: i64,
    coeffs: Vec<Complex64>,
    r_outer: f64,
}

const INDEX_LIMIT: i64 = 100_000;

impl LaurentSeries {
    pub fn new(n_min: i64, coeffs: Vec<Complex64>, r_outer: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("empty Laurent coefficient window".into()));
        }
        if !(r_outer > 1.0) || !r_outer.is_finite() {
            return Err(Error::Parameter(format!(
                "annulus outer radius must exceed 1, got {r_outer}"
            )));
        }
        let n_max = n_min + coeffs.len() as i64 - 1;
        if n_min.abs() > INDEX_LIMIT || n_max.abs() > INDEX_LIMIT {
            return Err(Error::Parameter("Laurent index window too large".into()));
        }
        Ok(LaurentSeries {
            n_min,
            coeffs,
            r_outer,
        })
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n` (zero outside the window).
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n < self.n_min || n > self.n_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n - self.n_min) as usize]
        }
    }

    /// Horner evaluation of `z^{n_min} * (a_0 + a_1 z + ...)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.n_min as i32)
    }
}

/// Radial moment `I_n(r) = (1/2) integral_1^{r^2} u^n (1-u)^2 du`.
///
/// Expanding `(1-u)^2` gives antiderivatives of pure powers; the exponents
/// `n, n+1, n+2` hit the logarithmic branch `u^{-1}` exactly when
/// `n` is `-1`, `-2` or `-3`. Requires `r >= 1`; `I_n(1) = 0`.
pub fn moment(n: i64, r: f64) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::Parameter(format!(
            "radial moment needs r >= 1, got {r}"
        )));
    }
    Ok(half_power_weight_integral(n, r * r))
}

/// Inner-orientation moment `(1/2) integral_{t^2}^{1} u^n (1-u)^2 du` for
/// `0 < t < 1`. Satisfies the reflection identity
/// `moment_inner(n, t) = moment(-n-4, 1/t)`.
pub fn moment_inner(n: i64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Parameter(format!(
            "inner moment needs 0 < t < 1, got {t}"
        )));
    }
    Ok(-half_power_weight_integral(n, t * t))
}

/// `(1/2) integral_1^{s} u^n (1-u)^2 du` for any `s > 0`.
fn half_power_weight_integral(n: i64, s: f64) -> f64 {
    0.5 * (power_antiderivative(n, s) - 2.0 * power_antiderivative(n + 1, s)
        + power_antiderivative(n + 2, s))
}

/// `integral_1^s u^m du`, with the log branch at `m = -1`.
fn power_antiderivative(m: i64, s: f64) -> f64 {
    if m == -1 {
        s.ln()
    } else {
        let p = (m + 1) as f64;
        (s.powf(p) - 1.0) / p
    }
}

/// Weighted L^2 norm from coefficients:
/// `sqrt(2 pi sum |a_n|^2 I_n(r))` over `1 < |z| < r`.
pub fn weighted_norm_series(s: &LaurentSeries, r: f64) -> Result<f64> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::Parameter(format!(
            "weighted norm needs r > 1, got {r}"
        )));
    }
    let total = exec::compensated_sum(s.coeffs.iter().enumerate().map(|(i, c)| {
        let n = s.n_min + i as i64;
        c.norm_sqr() * half_power_weight_integral(n, r * r)
    }));
    Ok((2.0 * std::f64::consts::PI * total).max(0.0).sqrt())
}

/// Inner-orientation weighted norm over `t < |z| < 1` from coefficients.
pub fn weighted_norm_inner(coeffs: &[Complex64], n_min: i64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Parameter(format!(
            "inner weighted norm needs 0 < t < 1, got {t}"
        )));
    }
    let total = exec::compensated_sum(coeffs.iter().enumerate().map(|(i, c)| {
        let n = n_min + i as i64;
        c.norm_sqr() * -half_power_weight_integral(n, t * t)
    }));
    Ok((2.0 * std::f64::consts::PI * total).max(0.0).sqrt())
}

/// The sup-over-`A_t` constant
/// `C(r,t) = (4/sqrt(2 pi)) sqrt(r^2+t^2)/(r^2-t^2) (1-t^2)^2/(r^2+3)
///           + 4 sqrt(3/pi) t`, for `1 < t < r`.
pub fn sup_bound_constant(r: f64, t: f64) -> Result<f64> {
    if !(t > 1.0 && t < r) || !r.is_finite() {
        return Err(Error::Parameter(format!(
            "sup bound constant needs 1 < t < r, got t = {t}, r = {r}"
        )));
    }
    let term1 = (4.0 / (2.0 * std::f64::consts::PI).sqrt())
        * ((r * r + t * t).sqrt() / (r * r - t * t))
        * ((1.0 - t * t).powi(2) / (r * r + 3.0));
    let term2 = 4.0 * (3.0f64 / std::f64::consts::PI).sqrt() * t;
    Ok(term1 + term2)
}

/// Pointwise form of the bound factor at `|z| = a` inside `A_r`:
/// the weighted value `(1-|z|^2)^2 |f(z)|` is at most
/// `pointwise_bound_factor(|z|, r) * ||f||_{A_r}`.
pub fn pointwise_bound_factor(a: f64, r: f64) -> Result<f64> {
    if !(a > 1.0 && a < r) || !r.is_finite() {
        return Err(Error::Parameter(format!(
            "pointwise bound factor needs 1 < |z| < r, got |z| = {a}, r = {r}"
        )));
    }
    let term1 = (4.0 / (2.0 * std::f64::consts::PI).sqrt())
        * ((r * r + a * a).sqrt() / (r * r - a * a))
        * ((1.0 - a * a).powi(2) / (a * a + r * r + 2.0));
    let term2 = 4.0 * (3.0f64 / std::f64::consts::PI).sqrt() * a;
    Ok(term1 + term2)
}

/// `sup_{1 < |z| <= t} (1-|z|^2)^2 |f(z)|` by polar scan with refinement;
/// the outer circle `|z| = t` is included so suprema attained toward the
/// outer edge are not clipped.
pub fn sup_weighted<F>(f: F, t: f64, n_radial: usize, n_angular: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64 + Sync + Send,
{
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::Parameter(format!(
            "weighted sup needs t > 1, got {t}"
        )));
    }
    if n_radial < 2 || n_angular < 4 {
        return Err(Error::Parameter("sup grid too small".into()));
    }
    let g = |z: Complex64| {
        let w = 1.0 - z.norm_sqr();
        w * w * f(z).norm()
    };
    Ok(grid::sup_polar(
        &g,
        RadialSpan {
            lo: 1.0,
            hi: t,
            include_hi: true,
            include_lo: false,
        },
        n_radial,
        n_angular,
        3,
    )
    .0)
}

/// Recover Laurent coefficients of `f` on the window `[n_min, n_max]` by
/// discrete Fourier analysis on `n_circles` concentric sampling circles,
/// combined across radii by least squares.
///
/// Exact (to roundoff) when `f` is a Laurent polynomial supported inside
/// the window. Content outside the window shows up as a reconstruction
/// residual on a fresh circle; a residual above `residual_tol` is an error
/// rather than a silently wrong answer.
pub fn laurent_coeffs<F>(
    f: F,
    r_outer: f64,
    n_min: i64,
    n_max: i64,
    n_circles: usize,
    residual_tol: f64,
) -> Result<LaurentSeries>
where
    F: Fn(Complex64) -> Complex64 + Sync + Send,
{
    if n_min > n_max {
        return Err(Error::Parameter(format!(
            "empty index window [{n_min}, {n_max}]"
        )));
    }
    if n_min.abs() > INDEX_LIMIT || n_max.abs() > INDEX_LIMIT {
        return Err(Error::Parameter("Laurent index window too large".into()));
    }
    if n_circles < 2 {
        return Err(Error::Parameter("need at least 2 sampling circles".into()));
    }
    if !(r_outer > 1.0) || !r_outer.is_finite() {
        return Err(Error::Parameter(format!(
            "annulus outer radius must exceed 1, got {r_outer}"
        )));
    }
    if !(residual_tol > 0.0) {
        return Err(Error::Parameter("residual tolerance must be positive".into()));
    }

    // Angular sample count: beyond twice the largest index modulus, so no
    // window mode aliases onto another.
    let max_mod = n_min.unsigned_abs().max(n_max.unsigned_abs()) as usize;
    let window = (n_max - n_min) as usize + 1;
    let m = (2 * max_mod + 8).max(window + 8).max(32);

    let radii: Vec<f64> = (0..n_circles)
        .map(|c| 1.0 + (r_outer - 1.0) * (c as f64 + 1.0) / (n_circles as f64 + 1.0))
        .collect();

    // Per circle, per window index: hat_a_n(rho) = (1/M) sum_j f_j e^{-i n theta_j}.
    let hats: Vec<Vec<Complex64>> = exec::map_indexed(n_circles, |ci| {
        let rho = radii[ci];
        let samples: Vec<Complex64> = (0..m)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                f(Complex64::from_polar(rho, theta))
            })
            .collect();
        (0..window)
            .map(|w| {
                let n = n_min + w as i64;
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &v) in samples.iter().enumerate() {
                    let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                    acc += v * Complex64::from_polar(1.0, -(n as f64) * theta);
                }
                acc / m as f64
            })
            .collect()
    });

    // Least squares per index: hat_a_n(rho) ~ a_n rho^n.
    let coeffs: Vec<Complex64> = (0..window)
        .map(|w| {
            let n = n_min + w as i64;
            let mut num = Complex64::new(0.0, 0.0);
            let mut den = 0.0f64;
            for (ci, hat) in hats.iter().enumerate() {
                let p = radii[ci].powi(n as i32);
                num += hat[w] * p;
                den += p * p;
            }
            num / den
        })
        .collect();

    let series = LaurentSeries::new(n_min, coeffs, r_outer)?;

    // Reconstruction check on a circle not used for fitting.
    let rho_check = 1.0 + (r_outer - 1.0) * 1.5 / (n_circles as f64 + 1.0);
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for j in 0..m {
        let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
        let z = Complex64::from_polar(rho_check, theta);
        let fv = f(z);
        worst = worst.max((fv - series.eval(z)).norm());
        scale = scale.max(fv.norm());
    }
    let residual = worst / scale;
    if residual > residual_tol {
        return Err(Error::WindowResidual {
            residual,
            tol: residual_tol,
        });
    }
    Ok(series)
}

/// Carry a function on the inner annulus `inner_radius < |z| < 1` to the
/// outer model by `g(w) = w^{-4} f(1/w)`: if `f = sum a_n z^n` then
/// `g = sum a_n w^{-n-4}`. The weighted sup and weighted L^2 norm are both
/// preserved exactly:
/// `(1-|z|^2)^2 |f(z)| = (1-|w|^2)^2 |g(w)|` at `z = 1/w`.
pub fn reflect_to_outer(
    coeffs: &[Complex64],
    n_min: i64,
    inner_radius: f64,
) -> Result<LaurentSeries> {
    if !(inner_radius > 0.0 && inner_radius < 1.0) {
        return Err(Error::Parameter(format!(
            "inner radius must lie in (0,1), got {inner_radius}"
        )));
    }
    if coeffs.is_empty() {
        return Err(Error::Parameter("empty Laurent coefficient window".into()));
    }
    let n_max = n_min + coeffs.len() as i64 - 1;
    // Index n maps to -n-4; the window reverses.
    let new_min = -n_max - 4;
    let reversed: Vec<Complex64> = coeffs.iter().rev().copied().collect();
    LaurentSeries::new(new_min, reversed, 1.0 / inner_radius)
}
