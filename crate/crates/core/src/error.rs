//! Error type shared by every module of the engine.

use thiserror::Error;

/// Everything that can go wrong while evaluating pressures, forces or their
/// temperature differentials.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the domain an operation is defined on
    /// (non-positive gap, negative tolerance, unknown material, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The London penetration depth diverges at and above the critical
    /// temperature; callers must treat such a plate as normal.
    #[error("London depth diverges: T = {temperature} K >= t_c = {t_c} K")]
    LondonDivergence { temperature: f64, t_c: f64 },

    /// The small-skin-depth closed form was requested outside its validity
    /// range; the numeric zero-mode integral has no such restriction.
    #[error(
        "expansion validity: delta/gap = {ratio:.4} >= {limit}; \
         use the numeric zero-mode integral instead"
    )]
    ExpansionValidity { ratio: f64, limit: f64 },

    /// A perturbative differential formula was requested outside the
    /// low-temperature / thin-skin regime it is derived in.
    #[error("perturbative validity: {0}")]
    PerturbativeValidity(String),

    /// Sphere-plate geometry outside the proximity-force regime.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// The thermal sum hit its index cap before meeting the relative
    /// tolerance. Carries the partial sum and the size of the last term.
    #[error(
        "thermal sum did not converge: {l_reached} terms, partial = {partial:.6e}, \
         last term bound = {bound:.6e}"
    )]
    NonConvergence {
        partial: f64,
        bound: f64,
        l_reached: u64,
    },

    /// Direct differencing would lose essentially every significant digit:
    /// the predicted |Δ|/magnitude ratio sits below the floor. The closed
    /// forms are the supported path for such differentials.
    #[error(
        "cancellation refusal: predicted |delta|/magnitude = {predicted_ratio:.3e} \
         < floor {floor:.0e}; use the closed-form method"
    )]
    CancellationRefused { predicted_ratio: f64, floor: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
