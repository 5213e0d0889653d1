use num_complex::Complex64;

/// Errors produced by the numerical kernels.
///
/// Every fallible operation in this crate reports failure through this type;
/// invalid inputs are rejected eagerly so that downstream arithmetic never
/// sees NaNs it did not produce itself.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar argument is outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A point was evaluated outside the chart it belongs to.
    #[error("point {point} lies outside the {domain} domain")]
    OutsideDomain { point: Complex64, domain: &'static str },

    /// An integrand returned a non-finite sample; the node is identified so
    /// the caller can locate the offending evaluation.
    #[error("non-finite sample {value} at node {index} (z = {node})")]
    NonFinite {
        index: usize,
        node: Complex64,
        value: Complex64,
    },

    /// Radial refinement of a disk integral kept growing instead of
    /// stabilizing: the integral does not exist.
    #[error("integral diverges under radial refinement (growth ratio {ratio:.3} per step)")]
    Divergent { ratio: f64 },

    /// A series-based operation needs f'(0) != 0.
    #[error("series is not locally invertible at 0: f'(0) = 0")]
    NotLocallyUnivalent,

    /// An operation received a differential of the wrong bidegree.
    #[error("expected a ({expected_k},{expected_l})-differential, got ({got_k},{got_l})")]
    WrongBidegree {
        expected_k: i32,
        expected_l: i32,
        got_k: i32,
        got_l: i32,
    },

    /// Coefficient recovery left more residual than the caller allowed: the
    /// requested index window does not capture the sampled function.
    #[error("coefficient window too small: fit residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    WindowResidual { residual: f64, tol: f64 },

    /// A dilatation with sup-norm >= 1 is not a Beltrami coefficient.
    #[error("sup |mu| = {sup:.6} >= 1: not a Beltrami differential")]
    NotABeltrami { sup: f64 },

    /// A ratio against a vanishing denominator was requested.
    #[error("ratio undefined: denominator is zero")]
    UndefinedRatio,

    /// The exact (coefficient-level) norm path was requested for a
    /// differential that only carries pointwise samples.
    #[error("exact norm path requires a coefficient representation")]
    NoSeriesRepresentation,
}

pub type Result<T> = std::result::Result<T, Error>;
