//! Hyperbolic densities, Moebius maps and metric pullbacks.
//!
//! Densities are normalized to curvature -4 on the disk:
//! `lambda_D(z) = 1/(1-|z|^2)` and `lambda_H(z) = 1/Im z` on the upper half
//! plane. With these normalizations the Cayley transform pulls `lambda_H`
//! back to `2 lambda_D`, not `lambda_D`; the factor 2 is intrinsic to the
//! pairing of the two charts and every consumer of half-plane data must
//! carry it. [`pullback_metric`] exposes exactly that computation, and the
//! tests pin the factor down.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Chart a density or differential lives on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartDomain {
    /// Unit disk `|z| < 1`.
    Disk,
    /// Upper half plane `Im z > 0`.
    HalfPlane,
    /// Round annulus `1 < |z| < r_outer`, kept in disk-exterior coordinates.
    Annulus { r_outer: f64 },
}

impl ChartDomain {
    pub fn name(&self) -> &'static str {
        match self {
            ChartDomain::Disk => "unit disk",
            ChartDomain::HalfPlane => "upper half plane",
            ChartDomain::Annulus { .. } => "annulus",
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            ChartDomain::Disk => z.norm_sqr() < 1.0,
            ChartDomain::HalfPlane => z.im > 0.0,
            ChartDomain::Annulus { r_outer } => {
                let r = z.norm();
                r > 1.0 && r < r_outer
            }
        }
    }

    /// Hyperbolic-type density of the chart at `z`.
    pub fn density(&self, z: Complex64) -> Result<f64> {
        match *self {
            ChartDomain::Disk => lambda_disk(z),
            ChartDomain::HalfPlane => lambda_halfplane(z),
            ChartDomain::Annulus { .. } => {
                if !self.contains(z) {
                    return Err(Error::OutsideDomain {
                        point: z,
                        domain: self.name(),
                    });
                }
                Ok(1.0 / (z.norm_sqr() - 1.0))
            }
        }
    }
}

/// `1/(1-|z|^2)` on the unit disk.
pub fn lambda_disk(z: Complex64) -> Result<f64> {
    let d = 1.0 - z.norm_sqr();
    if d <= 0.0 {
        return Err(Error::OutsideDomain {
            point: z,
            domain: "unit disk",
        });
    }
    Ok(1.0 / d)
}

/// `1/Im z` on the upper half plane.
pub fn lambda_halfplane(z: Complex64) -> Result<f64> {
    if z.im <= 0.0 {
        return Err(Error::OutsideDomain {
            point: z,
            domain: "upper half plane",
        });
    }
    Ok(1.0 / z.im)
}

/// A conformal density `rho` on a chart, evaluated pointwise.
#[derive(Clone)]
pub struct MetricDensity {
    domain: ChartDomain,
    eval: Arc<dyn Fn(Complex64) -> Result<f64> + Send + Sync>,
}

impl MetricDensity {
    /// The hyperbolic density of the chart itself.
    pub fn hyperbolic(domain: ChartDomain) -> Self {
        MetricDensity {
            domain,
            eval: Arc::new(move |z| domain.density(z)),
        }
    }

    /// Wrap an arbitrary density evaluator on `domain`.
    pub fn from_fn<F>(domain: ChartDomain, f: F) -> Self
    where
        F: Fn(Complex64) -> Result<f64> + Send + Sync + 'static,
    {
        MetricDensity {
            domain,
            eval: Arc::new(f),
        }
    }

    pub fn domain(&self) -> ChartDomain {
        self.domain
    }

    pub fn density(&self, z: Complex64) -> Result<f64> {
        (self.eval)(z)
    }
}

impl std::fmt::Debug for MetricDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricDensity")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// A holomorphic change of variable with an explicit derivative.
pub trait HolomorphicMap: Send + Sync {
    fn apply(&self, z: Complex64) -> Complex64;
    fn derivative(&self, z: Complex64) -> Complex64;
}

/// `w(z) = (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if (a * d - b * c).norm() == 0.0 {
            return Err(Error::Parameter(
                "degenerate Moebius map: ad - bc = 0".into(),
            ));
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Rotation `z -> e^{i theta} z`.
    pub fn rotation(theta: f64) -> Self {
        MoebiusMap {
            a: Complex64::from_polar(1.0, theta),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Disk automorphism `z -> e^{i theta} (z - alpha)/(1 - conj(alpha) z)`,
    /// requiring `|alpha| < 1`.
    pub fn disk_automorphism(alpha: Complex64, theta: f64) -> Result<Self> {
        if alpha.norm_sqr() >= 1.0 {
            return Err(Error::Parameter(format!(
                "automorphism center must satisfy |alpha| < 1, got |alpha| = {}",
                alpha.norm()
            )));
        }
        let rot = Complex64::from_polar(1.0, theta);
        Ok(MoebiusMap {
            a: rot,
            b: -rot * alpha,
            c: -alpha.conj(),
            d: Complex64::new(1.0, 0.0),
        })
    }

    /// The Cayley transform `z -> i (1 + z) / (1 - z)` as a Moebius map.
    pub fn cayley() -> Self {
        MoebiusMap {
            a: Complex64::new(0.0, 1.0),
            b: Complex64::new(0.0, 1.0),
            c: Complex64::new(-1.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }
}

impl HolomorphicMap for MoebiusMap {
    fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }
}

/// Composition `a(b(z))` of two holomorphic maps.
pub struct ComposedMap<A, B>(pub A, pub B);

impl<A: HolomorphicMap, B: HolomorphicMap> HolomorphicMap for ComposedMap<A, B> {
    fn apply(&self, z: Complex64) -> Complex64 {
        self.0.apply(self.1.apply(z))
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        self.0.derivative(self.1.apply(z)) * self.1.derivative(z)
    }
}

/// A map given by a pair of closures (value, derivative).
pub struct ClosureMap<F, D> {
    pub f: F,
    pub df: D,
}

impl<F, D> HolomorphicMap for ClosureMap<F, D>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync,
    D: Fn(Complex64) -> Complex64 + Send + Sync,
{
    fn apply(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        (self.df)(z)
    }
}

/// Cayley transform disk -> upper half plane, `T(z) = i (1+z)/(1-z)`.
/// Defined away from the pole at `z = 1`; boundary points other than the
/// pole map to the real line.
pub fn cayley(z: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - z;
    if den.norm() == 0.0 {
        return Err(Error::OutsideDomain {
            point: z,
            domain: "Cayley chart (pole at z = 1)",
        });
    }
    Ok(Complex64::new(0.0, 1.0) * (Complex64::new(1.0, 0.0) + z) / den)
}

/// Inverse Cayley transform, `T^{-1}(w) = (w - i)/(w + i)`; pole at `w = -i`.
pub fn cayley_inv(w: Complex64) -> Result<Complex64> {
    let den = w + Complex64::new(0.0, 1.0);
    if den.norm() == 0.0 {
        return Err(Error::OutsideDomain {
            point: w,
            domain: "inverse Cayley chart (pole at w = -i)",
        });
    }
    Ok((w - Complex64::new(0.0, 1.0)) / den)
}

/// Pull a density back along a holomorphic map:
/// `(g^* rho)(z) = rho(g(z)) |g'(z)|`, defined on `new_domain`.
pub fn pullback_metric<M>(map: M, new_domain: ChartDomain, rho: &MetricDensity) -> MetricDensity
where
    M: HolomorphicMap + 'static,
{
    let inner = rho.clone();
    MetricDensity::from_fn(new_domain, move |z| {
        let w = map.apply(z);
        Ok(inner.density(w)? * map.derivative(z).norm())
    })
}
