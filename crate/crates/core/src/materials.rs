//! Dielectric models at imaginary frequency and reflection coefficients.
//!
//! Metals are described by their plasma energy ħΩ_P, an optional relaxation
//! energy ħγ, and — for superconductors — a critical temperature. At the
//! nonzero Matsubara energies every model reduces to a local permittivity
//! ε(iξ), and the two polarizations reflect with the standard Fresnel
//! coefficients evaluated at imaginary frequency (both real and in [0, 1)
//! for ε ≥ 1).
//!
//! The zero mode is handled by dedicated operations because its transverse-
//! electric reflection is prescription-dependent: the dissipative
//! extrapolation sends it to 0 for a normal metal and to the London form
//! below the critical temperature, while the dissipationless extrapolation
//! keeps the plasma form at every temperature,
//!
//! ```text
//!     r(0, k⊥) = (√(κ² + k⊥²) − k⊥) / (√(κ² + k⊥²) + k⊥),
//! ```
//!
//! with κ = Ω_P/(ħc) or κ = 1/λ_L(T). The transverse-magnetic zero mode
//! reflects perfectly off any metal (a conductor expels electrostatic
//! fields), superconducting or not.

use crate::constants::HBAR_C;
use crate::error::{Error, Result};

/// How a metal's free-electron response is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaterialKind {
    /// Dissipationless free electrons: ε(iξ) = 1 + Ω_P²/ξ².
    Plasma,
    /// Ohmic dissipation included: ε(iξ) = 1 + Ω_P²/(ξ(ξ + γ)).
    Drude,
    /// Drude response above T_c and at all nonzero Matsubara energies;
    /// below T_c the zero mode acquires the London (Meissner) reflection.
    Superconductor,
}

/// A metal's dielectric description.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialModel {
    /// Response model.
    pub kind: MaterialKind,
    /// Plasma energy ħΩ_P in eV. Zero encodes vacuum (ε ≡ 1, nothing
    /// reflects, including the electrostatic zero mode).
    pub omega_p: f64,
    /// Relaxation energy ħγ in eV; used by the Drude and Superconductor
    /// kinds, ignored by the Plasma kind.
    pub gamma: f64,
    /// Critical temperature in K; meaningful for superconductors only.
    pub t_c: f64,
}

/// Default relaxation energy ħγ in eV for the built-in metals. The
/// temperature differentials in scope are dominated by the γ-independent
/// zero modes, so this enters only through the l ≥ 1 terms.
pub const DEFAULT_GAMMA: f64 = 0.035;

impl MaterialModel {
    /// Dissipationless metal with plasma energy `omega_p` (eV).
    pub fn plasma(omega_p: f64) -> Result<Self> {
        Self::validated(MaterialKind::Plasma, omega_p, 0.0, 0.0)
    }

    /// Ohmic metal with plasma energy `omega_p` and relaxation `gamma` (eV).
    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        Self::validated(MaterialKind::Drude, omega_p, gamma, 0.0)
    }

    /// Superconductor: Drude normal state plus a critical temperature.
    pub fn superconductor(omega_p: f64, gamma: f64, t_c: f64) -> Result<Self> {
        Self::validated(MaterialKind::Superconductor, omega_p, gamma, t_c)
    }

    fn validated(kind: MaterialKind, omega_p: f64, gamma: f64, t_c: f64) -> Result<Self> {
        if !omega_p.is_finite() || omega_p < 0.0 {
            return Err(Error::Domain(format!(
                "plasma energy must be finite and >= 0, got {omega_p} eV"
            )));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::Domain(format!(
                "relaxation energy must be finite and >= 0, got {gamma} eV"
            )));
        }
        if kind == MaterialKind::Superconductor && !(t_c > 0.0 && t_c.is_finite()) {
            return Err(Error::Domain(format!(
                "critical temperature must be finite and > 0, got {t_c} K"
            )));
        }
        Ok(Self {
            kind,
            omega_p,
            gamma,
            t_c,
        })
    }

    /// Niobium: superconductor, ħΩ_P = 8.7 eV, T_c = 9.2 K.
    pub fn niobium() -> Self {
        Self::superconductor(8.7, DEFAULT_GAMMA, 9.2).expect("valid preset")
    }

    /// Gold: normal ohmic metal, ħΩ_P = 9.0 eV.
    pub fn gold() -> Self {
        Self::drude(9.0, DEFAULT_GAMMA).expect("valid preset")
    }

    /// Near-perfect mirror: dissipationless with ħΩ_P = 10⁸ eV, so every
    /// reflection coefficient is within ~10⁻⁸ of 1 over the sampled range.
    pub fn ideal_mirror() -> Self {
        Self::plasma(1e8).expect("valid preset")
    }

    /// Look up a built-in preset by case-insensitive name.
    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "nb" | "niobium" => Some(Self::niobium()),
            "au" | "gold" => Some(Self::gold()),
            "ideal" => Some(Self::ideal_mirror()),
            _ => None,
        }
    }

    /// The same metal with superconductivity switched off: a superconductor
    /// becomes its normal-state Drude description; other kinds are returned
    /// unchanged.
    pub fn as_normal(&self) -> Self {
        match self.kind {
            MaterialKind::Superconductor => Self {
                kind: MaterialKind::Drude,
                omega_p: self.omega_p,
                gamma: self.gamma,
                t_c: 0.0,
            },
            _ => self.clone(),
        }
    }

    /// Permittivity ε(iξ) at imaginary frequency, ξ given as energy ħξ > 0
    /// in eV. The temperature argument is accepted for forward compatibility
    /// with temperature-dependent relaxation; the built-in models ignore it.
    ///
    /// The zero mode never calls this: ξ ≤ 0 is a domain error.
    pub fn permittivity_imaginary(&self, xi: f64, _temperature: f64) -> Result<f64> {
        if !(xi > 0.0) {
            return Err(Error::Domain(format!(
                "permittivity is defined for xi > 0 (zero mode has dedicated \
                 reflection operations), got xi = {xi} eV"
            )));
        }
        let ratio = self.omega_p / xi;
        Ok(match self.kind {
            MaterialKind::Plasma => 1.0 + ratio * ratio,
            // A superconductor keeps its normal-state response at every
            // nonzero Matsubara energy: those energies sit far above the
            // superconducting gap scale for the metals in scope.
            MaterialKind::Drude | MaterialKind::Superconductor => {
                1.0 + self.omega_p * self.omega_p / (xi * (xi + self.gamma))
            }
        })
    }

    /// Two-fluid London penetration depth λ_L(T) in nm,
    ///
    /// ```text
    ///     λ_L(T) = (ħc/Ω_P) · (1 − (T/T_c)⁴)^{−1/2},
    /// ```
    ///
    /// strictly increasing in T and equal to ħc/Ω_P at T = 0. Diverges as
    /// T → T_c: at and above T_c the plate must be treated as normal.
    pub fn london_depth(&self, temperature: f64) -> Result<f64> {
        if self.kind != MaterialKind::Superconductor {
            return Err(Error::Domain(
                "London depth is defined for superconductors only".into(),
            ));
        }
        if !(temperature >= 0.0) {
            return Err(Error::Domain(format!(
                "temperature must be >= 0, got {temperature} K"
            )));
        }
        if temperature >= self.t_c {
            return Err(Error::LondonDivergence {
                temperature,
                t_c: self.t_c,
            });
        }
        let frac = (temperature / self.t_c).powi(4);
        Ok(HBAR_C / self.omega_p / (1.0 - frac).sqrt())
    }
}

/// Which zero-frequency extrapolation the transverse-electric mode uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroModePrescription {
    /// Dissipative extrapolation: normal metals reflect nothing at zero
    /// frequency; superconductors reflect with the London form, κ = 1/λ_L(T).
    Drude,
    /// Dissipationless extrapolation: the plasma form with κ = Ω_P/(ħc) at
    /// every temperature, unchanged across the superconducting transition.
    Plasma,
}

/// A plate: a material at a temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateState {
    /// Dielectric description of the plate.
    pub material: MaterialModel,
    /// Plate temperature in K.
    pub temperature: f64,
}

impl PlateState {
    /// Pair a material with a temperature.
    pub fn new(material: MaterialModel, temperature: f64) -> Self {
        Self {
            material,
            temperature,
        }
    }

    /// True strictly below the critical temperature of a superconductor.
    pub fn is_superconducting(&self) -> bool {
        self.material.kind == MaterialKind::Superconductor
            && self.temperature < self.material.t_c
    }
}

/// Reflection coefficient and its complement, carried together so that
/// integrands can form 1 − r₁r₂ without cancellation when r → 1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Reflection {
    pub r: f64,
    pub one_minus_r: f64,
}

/// Fresnel pair at imaginary frequency, cancellation-free at both ends.
///
/// With q = √(k⊥² + ξ̃²) and k_m = √(k⊥² + ε ξ̃²), ξ̃ = ξ/(ħc):
///
/// ```text
///     r_TE = (k_m − q)/(k_m + q),    r_TM = (ε q − k_m)/(ε q + k_m).
/// ```
///
/// The numerators are expanded so ε → 1 costs no precision, and the
/// complements 2q/(k_m + q), 2k_m/(ε q + k_m) are exact as r → 1.
pub(crate) fn fresnel_parts(epsilon: f64, xi: f64, k_perp: f64) -> (Reflection, Reflection) {
    let xt = xi / HBAR_C;
    let q = k_perp.hypot(xt);
    let km = k_perp.hypot(epsilon.sqrt() * xt);
    let te_den = km + q;
    let te = Reflection {
        // k_m − q = (ε − 1)ξ̃² / (k_m + q)
        r: (epsilon - 1.0) * xt * xt / (te_den * te_den),
        one_minus_r: 2.0 * q / te_den,
    };
    let tm_den = epsilon * q + km;
    let tm = Reflection {
        // ε q − k_m = (ε − 1)((ε + 1)k⊥² + ε ξ̃²) / (ε q + k_m)
        r: (epsilon - 1.0) * ((epsilon + 1.0) * k_perp * k_perp + epsilon * xt * xt)
            / (tm_den * tm_den),
        one_minus_r: 2.0 * km / tm_den,
    };
    (te, tm)
}

/// Fresnel reflection pair (r_TE, r_TM) at imaginary frequency.
///
/// `epsilon` ≥ 1 is the permittivity at iξ, `xi` the energy ħξ in eV,
/// `k_perp` the transverse wavevector in nm⁻¹; ξ and k⊥ must not both
/// vanish. Both coefficients lie in [0, 1) and increase with ε.
pub fn fresnel_imaginary(epsilon: f64, xi: f64, k_perp: f64) -> (f64, f64) {
    let (te, tm) = fresnel_parts(epsilon, xi, k_perp);
    (te.r, tm.r)
}

/// The plasma-form zero-frequency TE reflection with inverse screening
/// length `kappa` (nm⁻¹) at transverse wavevector `k_perp` (nm⁻¹):
/// (s − k⊥)/(s + k⊥) with s = √(κ² + k⊥²). Equals 1 at k⊥ = 0 (for κ > 0)
/// and 0 for κ = 0.
pub fn plasma_form_reflection(kappa: f64, k_perp: f64) -> f64 {
    plasma_form_parts(kappa, k_perp).r
}

/// Plasma-form reflection with its complement: r = κ²/(s + k⊥)²,
/// 1 − r = 2k⊥/(s + k⊥), both cancellation-free.
pub(crate) fn plasma_form_parts(kappa: f64, k_perp: f64) -> Reflection {
    if kappa == 0.0 {
        return Reflection {
            r: 0.0,
            one_minus_r: 1.0,
        };
    }
    let s = kappa.hypot(k_perp);
    let den = s + k_perp;
    Reflection {
        r: (kappa / den) * (kappa / den),
        one_minus_r: 2.0 * k_perp / den,
    }
}

/// Effective plasma energy (eV) governing a plate's TE zero mode, or 0 when
/// that mode reflects nothing:
///
/// * plasma prescription — Ω_P, whatever the temperature or kind;
/// * dissipative prescription — ħc/λ_L(T) = Ω_P·√(1 − (T/T_c)⁴) for a
///   superconducting plate, 0 for a normal lossy one. A dissipationless
///   plasma-kind plate has no lossy branch to extrapolate, so it keeps Ω_P
///   under either prescription.
pub fn te_zero_omega_eff(plate: &PlateState, prescription: ZeroModePrescription) -> f64 {
    match prescription {
        ZeroModePrescription::Plasma => plate.material.omega_p,
        ZeroModePrescription::Drude => match plate.material.kind {
            MaterialKind::Plasma => plate.material.omega_p,
            MaterialKind::Drude => 0.0,
            MaterialKind::Superconductor => {
                if plate.is_superconducting() {
                    let frac = (plate.temperature / plate.material.t_c).powi(4);
                    plate.material.omega_p * (1.0 - frac).sqrt()
                } else {
                    0.0
                }
            }
        },
    }
}

/// TE zero-mode reflection coefficient of one plate at `k_perp` (nm⁻¹).
pub fn te_zero_reflection(
    plate: &PlateState,
    prescription: ZeroModePrescription,
    k_perp: f64,
) -> f64 {
    let omega_eff = te_zero_omega_eff(plate, prescription);
    plasma_form_reflection(omega_eff / HBAR_C, k_perp)
}

/// TM zero-mode reflection coefficient: exactly 1 for any metal, normal or
/// superconducting (vacuum, ε ≡ 1, reflects nothing).
pub fn tm_zero_reflection(plate: &PlateState) -> f64 {
    if plate.material.omega_p > 0.0 {
        1.0
    } else {
        0.0
    }
}
