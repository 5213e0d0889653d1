//! Weil-Petersson-type pairing of harmonic Beltrami data.
//!
//! On the unit disk with density `rho = 1/(1-|z|^2)` the pairing is
//!
//! ```text
//! <mu, nu> = integral mu conj(nu) rho^2 dA,
//! ```
//!
//! linear in the first slot and conjugate-linear in the second. For
//! harmonic representatives `mu = (1-|z|^2)^2 conj(phi)`,
//! `nu = (1-|z|^2)^2 conj(psi)` the integrand collapses to
//! `(1-|z|^2)^2 conj(phi) psi`, giving the coefficient formula
//! `<mu, nu> = sum w_n conj(phi_n) psi_n` with
//! `w_n = 2 pi / ((n+1)(n+2)(n+3))`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::diff::{harmonic_l2_weight, quadratic_from_beltrami, Differential, HarmonicBeltrami};
use crate::error::Result;
use crate::exec;
use crate::quad::{self, QuadratureRule};

/// Coefficient-exact pairing `sum w_n conj(phi_n) psi_n`.
pub fn wp_inner_exact(mu: &HarmonicBeltrami, nu: &HarmonicBeltrami) -> Complex64 {
    let n = mu.degree().max(nu.degree());
    let mut acc = Complex64::new(0.0, 0.0);
    let re = exec::compensated_sum(
        (0..=n).map(|k| (mu.coeff(k).conj() * nu.coeff(k)).re * harmonic_l2_weight(k)),
    );
    let im = exec::compensated_sum(
        (0..=n).map(|k| (mu.coeff(k).conj() * nu.coeff(k)).im * harmonic_l2_weight(k)),
    );
    acc.re = re;
    acc.im = im;
    acc
}

/// The same pairing by area quadrature of `mu conj(nu) rho^2`.
pub fn wp_inner_quad(
    mu: &HarmonicBeltrami,
    nu: &HarmonicBeltrami,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    quad::integrate(rule, |z| {
        let w = 1.0 - z.norm_sqr();
        mu.eval(z) * nu.eval(z).conj() / (w * w)
    })
}

/// The pairing routed through quadratic-differential representatives:
/// `integral q_mu conj(q_nu) rho^{-2} dA` with `q = rho^2 mu`. Exercises a
/// different code path (density shifts on differentials) than
/// [`wp_inner_quad`], so agreement between the two is a structural check.
pub fn wp_inner_via_quadratic(
    mu: &Differential,
    nu: &Differential,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    let q_mu = quadratic_from_beltrami(mu)?;
    let q_nu = quadratic_from_beltrami(nu)?;
    quad::integrate(rule, |z| {
        let w = 1.0 - z.norm_sqr();
        q_mu.eval(z) * q_nu.eval(z).conj() * (w * w)
    })
}

/// Hermitian Gram matrix of a family of harmonic Beltramis.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    dim: usize,
    /// Row-major entries, `entries[i * dim + j] = <basis_i, basis_j>`.
    entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        GramMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `max_{i,j} |G_ij - conj(G_ji)|`: zero for exactly Hermitian data.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.entry(i, j) - self.entry(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue, computed on the real symmetric embedding
    /// `[[Re G, -Im G], [Im G, Re G]]`, whose spectrum is that of `G` with
    /// doubled multiplicity. Tiny Hermitian defects are symmetrized away
    /// before the eigensolve.
    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.dim;
        if n == 0 {
            return 0.0;
        }
        let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let a = 0.5 * (self.entry(i, j).re + self.entry(j, i).re);
                let b = 0.5 * (self.entry(i, j).im - self.entry(j, i).im);
                h[(i, j)] = a;
                h[(n + i, n + j)] = a;
                h[(i, n + j)] = -b;
                h[(n + i, j)] = b;
            }
        }
        let eig = h.symmetric_eigen();
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Gram matrix by the coefficient-exact pairing.
pub fn wp_gram_exact(basis: &[HarmonicBeltrami]) -> GramMatrix {
    let n = basis.len();
    let entries = exec::map_indexed(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        wp_inner_exact(&basis[i], &basis[j])
    });
    GramMatrix { dim: n, entries }
}

/// Gram matrix by area quadrature.
pub fn wp_gram_quad(basis: &[HarmonicBeltrami], rule: &QuadratureRule) -> Result<GramMatrix> {
    let n = basis.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(wp_inner_quad(&basis[i], &basis[j], rule)?);
        }
    }
    Ok(GramMatrix { dim: n, entries })
}
