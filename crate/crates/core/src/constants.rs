//! Physical constants and unit conversions.
//!
//! Internal unit system: frequencies are energies ħξ in eV, lengths in nm,
//! temperatures in K. Pressures and forces come out in eV/nm³ and eV/nm and
//! are converted once, at the output boundary, with the exact CODATA factors
//! below.

/// ħc in eV·nm (CODATA).
pub const HBAR_C: f64 = 197.326_980_4;

/// Boltzmann constant in eV/K (CODATA, exact).
pub const K_B: f64 = 8.617_333_262e-5;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Pressure conversion: 1 eV/nm³ = 1.602176634×10⁸ Pa (exact).
pub const PA_PER_EV_NM3: f64 = 1.602_176_634e8;

/// Force conversion: 1 eV/nm = 1.602176634×10⁻¹⁰ N (exact).
pub const NEWTON_PER_EV_NM: f64 = 1.602_176_634e-10;

/// Smallest gap the local-optics models are trusted for, in nm.
///
/// Below ~10 nm the sharp-boundary dielectric description stops being
/// credible and nothing in scope needs it.
pub const MIN_GAP_NM: f64 = 10.0;

/// Upper integration limit in the dimensionless variable y = 2aq.
///
/// The integrands decay like e⁻ʸ; beyond y = 60 the tail is below 10⁻²⁶ of
/// the peak, far under every tolerance in use.
pub const Y_MAX: f64 = 60.0;

/// Plasma energy (eV) whose skin depth δ = ħc/Ω_P enters the small-δ closed
/// forms of the temperature differentials; both metals in scope sit near it.
pub const SETUP_OMEGA_P: f64 = 9.0;
