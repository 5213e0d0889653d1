//! Batch evaluation helpers.
//!
//! All heavy loops in this crate are index-parallel maps followed by a
//! deterministic reduction. The maps below always return results in index
//! order, so reductions downstream (compensated sums, argmax scans) produce
//! bit-identical answers no matter how many worker threads ran the map.
//!
//! The `parallel` feature (on by default) routes [`map_indexed`] through
//! rayon; without it the crate is single-threaded. The `_seq` variants are
//! always sequential and exist so benchmarks can compare both paths in one
//! build. Rayon honours the `RAYON_NUM_THREADS` environment variable for
//! the global pool size.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f(0..n)` and collect the results in index order, in parallel
/// when the `parallel` feature is enabled.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_indexed`]; kept unconditionally for benchmarks
/// and for callers that want to avoid pool startup for tiny batches.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Compensated (Kahan-Neumaier) sum in index order.
///
/// Floating-point addition is not associative, so the summation order is
/// part of the contract: callers that evaluate terms in parallel must hand
/// them over in index order to stay deterministic.
pub fn compensated_sum<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
