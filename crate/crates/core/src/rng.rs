//! Deterministic random ensembles for the verification trials.
//!
//! Every trial draws from a ChaCha stream keyed by `(seed, stream, trial)`
//! through a splitmix64 expansion, so results are reproducible across runs,
//! platforms, and thread counts, and individual trials can be replayed in
//! isolation.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::annulus::LaurentSeries;
use crate::diff::HarmonicBeltrami;
use crate::error::Result;
use crate::series::PowerSeries;

fn splitmix_next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream cipher RNG for one `(seed, stream, trial)` cell. Distinct cells
/// get statistically independent streams; identical cells get identical
/// streams.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut state = seed;
    let _ = splitmix_next(&mut state);
    let mut stream_state = stream.wrapping_add(0x243F_6A88_85A3_08D3);
    state ^= splitmix_next(&mut stream_state);
    let _ = splitmix_next(&mut state);
    let mut trial_state = trial.wrapping_add(0x1319_8A2E_0370_7344);
    state ^= splitmix_next(&mut trial_state);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix_next(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Standard complex Gaussian: independent `N(0, 1/2)` real and imaginary
/// parts, so `E|c|^2 = 1`.
pub fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / 2f64.sqrt()
}

/// Random polynomial with i.i.d. standard complex Gaussian coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize) -> PowerSeries {
    PowerSeries::new((0..=degree).map(|_| standard_complex(rng)).collect())
}

/// Random polynomial with geometrically damped Gaussian coefficients
/// (`decay^n` envelope), for ensembles that should stay boundary-tame.
pub fn random_poly_decaying<R: Rng>(rng: &mut R, degree: usize, decay: f64) -> PowerSeries {
    let mut envelope = 1.0;
    PowerSeries::new(
        (0..=degree)
            .map(|_| {
                let c = standard_complex(rng) * envelope;
                envelope *= decay;
                c
            })
            .collect(),
    )
}

/// Random Laurent polynomial on the annulus `1 < |z| < r_outer` with
/// i.i.d. standard complex Gaussian coefficients on `[n_min, n_max]`.
pub fn random_laurent<R: Rng>(
    rng: &mut R,
    n_min: i64,
    n_max: i64,
    r_outer: f64,
) -> Result<LaurentSeries> {
    let len = (n_max - n_min + 1).max(0) as usize;
    LaurentSeries::new(
        n_min,
        (0..len).map(|_| standard_complex(rng)).collect(),
        r_outer,
    )
}

/// Random harmonic Beltrami with Gaussian analytic coefficients, rescaled
/// to unit weighted L^2 norm.
pub fn random_harmonic_unit<R: Rng>(rng: &mut R, degree: usize) -> HarmonicBeltrami {
    let mut mu = HarmonicBeltrami::new((0..=degree).map(|_| standard_complex(rng)).collect());
    let norm = mu.l2_norm();
    if norm < 1e-12 {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        coeffs[0] = Complex64::new(1.0, 0.0);
        mu = HarmonicBeltrami::new(coeffs);
        return mu.scale(Complex64::new(1.0 / mu.l2_norm(), 0.0));
    }
    mu.scale(Complex64::new(1.0 / norm, 0.0))
}
