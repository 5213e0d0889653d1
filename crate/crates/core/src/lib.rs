//! Numerical kernels for hyperbolic-weighted function spaces on the disk,
//! half-plane, and round annuli: weighted `L^p` norms of `(k,l)`-tensor
//! fields, pre-Schwarzian/Schwarzian calculus with its reflection
//! dilatation, the harmonic-Beltrami projection kernel, and the associated
//! Hermitian pairing — every identity and inequality backed by closed-form
//! oracles and a registered verification suite.
//!
//! Layout:
//!
//! - [`exec`]: data-parallel maps with a sequential fallback (feature
//!   `parallel`, on by default) and compensated summation; every reduction
//!   is performed in index order, so results are identical across thread
//!   counts.
//! - [`quad`]: Gauss-Legendre x trapezoid product rules on disks and annuli
//!   with known polynomial exactness, plus closed-form monomial moments.
//! - [`geom`]: hyperbolic densities, Moebius maps, metric pullbacks.
//! - [`series`] / [`annulus`]: truncated Taylor and Laurent arithmetic,
//!   radial norm moments, circle-sampling coefficient recovery.
//! - [`diff`]: `(k,l)`-differentials, weighted norms (quadrature,
//!   coefficient-exact, and divergence-guarded), harmonic Beltrami data,
//!   density-shift maps between Beltrami and quadratic representatives.
//! - [`schwarz`]: pre-Schwarzian/Schwarzian maps, Bergman-type norms, the
//!   sup/L^2 comparison, reflection dilatation and its energy identity.
//! - [`project`]: moment analysis and the reproducing projection onto
//!   harmonic Beltramis.
//! - [`wp`]: the Hermitian pairing, Gram matrices, spectral checks.
//! - [`verify`]: the registered check suite with seeded ensembles.
//!
//! The `parallel` feature (default) runs quadrature, grid scans, and trial
//! ensembles on a work-stealing pool; disabling it yields a dependency-free
//! sequential build with bit-identical results.

pub mod annulus;
pub mod diff;
pub mod error;
pub mod exec;
pub mod geom;
pub mod grid;
pub mod project;
pub mod quad;
pub mod rng;
pub mod schwarz;
pub mod series;
pub mod verify;
pub mod wp;

pub use error::{Error, Result};
