//! Property-based checks of the structural invariants: norm isometries,
//! chart invariance, homogeneity, and quadrature exactness on randomly
//! drawn data (shrinkable, unlike the seeded suite ensembles).

use num_complex::Complex64;
use proptest::prelude::*;

use teichwp::annulus;
use teichwp::diff::{self, beltrami_from_quadratic, Differential, HarmonicBeltrami};
use teichwp::geom::{ChartDomain, MoebiusMap};
use teichwp::quad::{self, Region};
use teichwp::schwarz;
use teichwp::series::PowerSeries;
use teichwp::wp;

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

fn small_series(max_len: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(complex_in(1.0), 1..max_len).prop_map(PowerSeries::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Dividing conjugate-quadratic data by rho^2 leaves every L^p norm
    /// unchanged (the integrands are pointwise equal).
    #[test]
    fn density_shift_is_isometric(s in small_series(8), p in prop::sample::select(vec![1.0f64, 2.0, 3.0])) {
        let rule = quad::disk_rule(24, 48, 1.0).unwrap();
        let alpha = Differential::from_series(0, 2, ChartDomain::Disk, s, 0, true).unwrap();
        let mu = beltrami_from_quadratic(&alpha).unwrap();
        let na = diff::lp_norm(&alpha, p, &rule).unwrap();
        let nm = diff::lp_norm(&mu, p, &rule).unwrap();
        prop_assert!((na - nm).abs() <= 1e-9 * na.max(1.0), "{na} vs {nm}");
    }

    /// Norms are absolutely homogeneous: ||c h||_p = |c| ||h||_p.
    #[test]
    fn lp_norm_homogeneity(s in small_series(8), c in complex_in(3.0), p in prop::sample::select(vec![1.0f64, 2.0])) {
        let rule = quad::disk_rule(24, 48, 1.0).unwrap();
        let h = Differential::from_series(0, 2, ChartDomain::Disk, s.clone(), 0, false).unwrap();
        let hc = Differential::from_series(0, 2, ChartDomain::Disk, s.scale(c), 0, false).unwrap();
        let base = diff::lp_norm(&h, p, &rule).unwrap();
        let scaled = diff::lp_norm(&hc, p, &rule).unwrap();
        prop_assert!((scaled - c.norm() * base).abs() <= 1e-9 * (1.0 + scaled));
    }

    /// The Schwarzian kills Moebius maps and is invariant under
    /// post-composition by them.
    #[test]
    fn schwarzian_moebius_invariance(
        f2 in complex_in(0.3),
        f3 in complex_in(0.2),
        mc in complex_in(0.4),
    ) {
        let f = PowerSeries::new(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            f2,
            f3,
        ])
        .truncated(16);
        // m(w) = w / (1 + mc w): a Moebius map fixing 0 with m'(0) = 1.
        let den = PowerSeries::new(vec![Complex64::new(1.0, 0.0), mc]);
        let mf = f.div(&den.compose_guard(&f), 16);
        prop_assume!(mf.is_ok());
        let s1 = schwarz::schwarzian(&f).unwrap();
        let s2 = schwarz::schwarzian(&mf.unwrap()).unwrap();
        for n in 0..=8usize {
            prop_assert!((s1.coeff(n) - s2.coeff(n)).norm() < 1e-8, "n={n}");
        }
    }

    /// Radial weight moments match a direct 1-D Gauss-Legendre evaluation,
    /// including the logarithmic branches.
    #[test]
    fn annulus_moment_matches_1d_quadrature(n in -8i64..=8, r in 1.05f64..4.0) {
        let exact = annulus::moment(n, r).unwrap();
        let (nodes, weights) = quad::gauss_legendre(200);
        let (lo, hi) = (1.0, r * r);
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            let u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo);
            acc += w * 0.5 * (hi - lo) * 0.5 * u.powi(n as i32) * (1.0 - u).powi(2);
        }
        prop_assert!((exact - acc).abs() <= 1e-9 * (1.0 + exact.abs()), "{exact} vs {acc}");
    }

    /// Product rules integrate mixed monomials exactly within their stated
    /// degree window, on both disk and annulus.
    #[test]
    fn monomial_exactness(a in 0u32..10, b in 0u32..10) {
        for rule in [
            quad::disk_rule(16, 40, 1.0).unwrap(),
            quad::annulus_rule(2.0, 16, 40).unwrap(),
        ] {
            let got = quad::integrate(&rule, |z| z.powu(a) * z.conj().powu(b)).unwrap();
            let want = quad::monomial_moment(rule.region(), a, b);
            let scale = match rule.region() {
                Region::Disk { .. } => 1.0,
                Region::Annulus { r_outer } => r_outer.powi((a + b) as i32 + 2),
            };
            prop_assert!((got - want).norm() <= 1e-12 * scale, "a={a} b={b}: {got} vs {want}");
        }
    }

    /// The coefficient pairing matches its defining integral on random
    /// harmonic data.
    #[test]
    fn wp_pairing_matches_integral(
        a in prop::collection::vec(complex_in(1.0), 1..5),
        b in prop::collection::vec(complex_in(1.0), 1..5),
    ) {
        let mu = HarmonicBeltrami::new(a);
        let nu = HarmonicBeltrami::new(b);
        let exact = wp::wp_inner_exact(&mu, &nu);
        let rule = quad::disk_rule(24, 48, 1.0).unwrap();
        let numeric = wp::wp_inner_quad(&mu, &nu, &rule).unwrap();
        prop_assert!((exact - numeric).norm() <= 1e-10 * (1.0 + exact.norm()));
    }

    /// Disk automorphisms act isometrically on weighted L^2 norms of
    /// conjugate-quadratic data.
    #[test]
    fn automorphism_norm_invariance(s in small_series(5), alpha in complex_in(0.55), theta in 0.0f64..6.28) {
        prop_assume!(alpha.norm() < 0.6);
        let g = MoebiusMap::disk_automorphism(alpha, theta).unwrap();
        let h = Differential::from_series(0, 2, ChartDomain::Disk, s, 0, true).unwrap();
        let pulled = diff::transform_differential(&h, g, ChartDomain::Disk);
        let rule = quad::disk_rule(48, 96, 1.0).unwrap();
        let n0 = diff::lp_norm(&h, 2.0, &rule).unwrap();
        let n1 = diff::lp_norm(&pulled, 2.0, &rule).unwrap();
        prop_assert!((n0 - n1).abs() <= 1e-7 * (1.0 + n0), "{n0} vs {n1}");
    }
}

/// Helper trait to express `den(f)` (composition with an affine-in-f
/// denominator) without adding composition to the library API surface.
trait ComposeGuard {
    fn compose_guard(&self, f: &PowerSeries) -> PowerSeries;
}

impl ComposeGuard for PowerSeries {
    /// For `den = c0 + c1 w`, returns `c0 + c1 f(z)` as a series.
    fn compose_guard(&self, f: &PowerSeries) -> PowerSeries {
        assert!(self.degree() <= 1);
        f.scale(self.coeff(1))
            .add(&PowerSeries::constant(self.coeff(0), 0))
    }
}
