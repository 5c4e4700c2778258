//! Thermal Casimir physics between superconducting and normal plates.
//!
//! The crate evaluates the finite-temperature Lifshitz pressure between
//! parallel plates and the proximity-force sphere-plate force, for plasma,
//! Drude, and superconducting (London) material models, together with the
//! temperature-change differentials that discriminate between the two
//! zero-frequency TE prescriptions:
//!
//! * [`materials`] — permittivities along the imaginary frequency axis,
//!   Fresnel reflection coefficients, London penetration depth, and the
//!   zero-mode prescriptions;
//! * [`lifshitz`] — the Matsubara-sum pressure between parallel plates,
//!   split into zero-mode and dispersive parts;
//! * [`pfa`] — the sphere-plate force in the proximity approximation;
//! * [`deltas`] — pressure and force differentials between two
//!   temperatures, via closed forms or direct numeric differencing with
//!   cancellation protection;
//! * [`quad`], [`kahan`] — deterministic adaptive quadrature and
//!   compensated summation used throughout;
//! * [`constants`] — physical constants and unit conversions (energies in
//!   eV, lengths in nm, pressures in Pa, forces in N).
//!
//! Evaluations are deterministic: results are bit-identical across worker
//! thread counts and repeated runs.

pub mod constants;
pub mod deltas;
pub mod error;
pub mod kahan;
pub mod lifshitz;
pub mod materials;
pub mod pfa;
pub mod quad;

pub use error::{Error, Result};
