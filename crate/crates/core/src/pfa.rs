//! Sphere-plate Casimir force in the proximity approximation.
//!
//! For a sphere of radius R at minimum separation a ≪ R from a plate, the
//! force is 2πR times the plane-parallel interaction energy per unit area,
//! which leads to
//!
//! ```text
//!     F_ps(a, T) = −(k_B T R/2π) Σ'_{l≥0} ∫ d²k⊥
//!                  Σ_α ln(1 − r_α⁽¹⁾ r_α⁽²⁾ e^{−2 a q_l}),
//! ```
//!
//! positive for attraction, with the same ½ weight on l = 0 and the same
//! reflection routing as the plane-parallel pressure. After azimuthal
//! reduction and the substitution y = 2 a q_l each term becomes
//! (k_B T R/(4a²)) ∫ y (−ln(1 − r r e^{−y})) dy from y_l = 2aξ_l/(ħc).
//!
//! The zero-frequency TM mode again has a closed form, k_B T R ζ(3)/(8a²).
//! Every result is exactly linear in R: the kernel is evaluated per unit
//! radius and multiplied by R as the final step.
//!
//! The approximation's relative error is of order a/R, so geometries are
//! rejected unless a/R < 0.05. Forces are returned in N.


use crate::constants::{HBAR_C, K_B, MIN_GAP_NM, NEWTON_PER_EV_NM, Y_MAX, ZETA_3};
use crate::error::{Error, Result};
use crate::lifshitz::{matsubara, matsubara_sum, CavityConfig, MatsubaraTail};
use crate::materials::{fresnel_parts, plasma_form_parts, te_zero_omega_eff, Reflection};
use crate::quad::integrate;

/// Loosest tolerance accepted for a quadrature knob.
const TOL_CEILING: f64 = 1e-4;

/// Largest admissible a/R for the proximity approximation.
const MAX_GAP_RADIUS_RATIO: f64 = 0.05;

/// A sphere-plate arrangement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereGeometry {
    /// Sphere radius R in μm.
    pub radius: f64,
    /// Minimum sphere-plate separation a in nm.
    pub gap: f64,
}

impl SphereGeometry {
    /// Validated geometry; requires a/R < 0.05 so the proximity
    /// approximation's O(a/R) error stays at the percent level.
    pub fn new(radius: f64, gap: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::Geometry(format!(
                "sphere radius must be finite and > 0, got {radius} um"
            )));
        }
        if !gap.is_finite() || gap < MIN_GAP_NM {
            return Err(Error::Geometry(format!(
                "gap must be >= {MIN_GAP_NM} nm, got {gap} nm"
            )));
        }
        let ratio = gap / (radius * 1000.0);
        if ratio >= MAX_GAP_RADIUS_RATIO {
            return Err(Error::Geometry(format!(
                "a/R = {ratio:.4} exceeds the proximity-approximation cap \
                 {MAX_GAP_RADIUS_RATIO}"
            )));
        }
        Ok(Self { radius, gap })
    }

    /// Radius in nm.
    fn radius_nm(&self) -> f64 {
        self.radius * 1000.0
    }
}

/// The three-term decomposition of the sphere-plate force, in N.
#[derive(Debug, Clone)]
pub struct ForceBreakdown {
    /// Zero-frequency TE contribution.
    pub f0_te: f64,
    /// Zero-frequency TM contribution.
    pub f0_tm: f64,
    /// Sum of all l ≥ 1 Matsubara terms.
    pub f1: f64,
    /// f0_te + f0_tm + f1, positive for attraction.
    pub total: f64,
    /// Highest Matsubara index evaluated before the sum terminated.
    pub l_used: u64,
    /// Largest estimated absolute quadrature error among all integrals, N.
    pub max_quad_error: f64,
}

/// One round-trip log factor −ln(1 − r₁r₂ e^{−y}), evaluated through ln_1p
/// so the small-argument region keeps full precision.
fn log_factor(r1: Reflection, r2: Reflection, exp_neg_y: f64) -> f64 {
    let rr = r1.r * r2.r;
    if rr == 0.0 {
        return 0.0;
    }
    -(-rr * exp_neg_y).ln_1p()
}

/// Closed-form zero-frequency TM force k_B T R ζ(3)/(8a²) in N (perfect
/// reflection of the electrostatic mode).
pub fn f0_tm_ps(geometry: &SphereGeometry, temperature: f64) -> Result<f64> {
    check_temperature(temperature)?;
    Ok(per_radius_to_force(
        f0_tm_per_radius_ev(geometry.gap, temperature),
        geometry,
    ))
}

fn f0_tm_per_radius_ev(gap: f64, temperature: f64) -> f64 {
    K_B * temperature * ZETA_3 / (8.0 * gap * gap)
}

/// The zero-frequency TM force by direct quadrature of
/// (k_B T R/(8a²)) ∫₀^∞ y (−ln(1 − e^{−y})) dy (the integral is ζ(3));
/// agrees with [`f0_tm_ps`] to the quadrature tolerance.
pub fn f0_tm_ps_numeric(
    geometry: &SphereGeometry,
    temperature: f64,
    rel_tol: f64,
) -> Result<f64> {
    check_temperature(temperature)?;
    check_rel_tol(rel_tol)?;
    let f = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        -y * (-(-y).exp()).ln_1p()
    };
    let out = integrate(&f, 0.0, Y_MAX, rel_tol);
    let per_radius = K_B * temperature / (8.0 * geometry.gap * geometry.gap) * out.value;
    Ok(per_radius_to_force(per_radius, geometry))
}

/// Zero-frequency TE force in N for plates whose TE zero mode reflects with
/// the plasma form at effective plasma energies `omega_eff_1`, `omega_eff_2`
/// (eV). Exactly 0 when either energy is 0; always in [0, f0_tm_ps].
pub fn f0_te_ps(
    geometry: &SphereGeometry,
    temperature: f64,
    omega_eff_1: f64,
    omega_eff_2: f64,
    rel_tol: f64,
) -> Result<f64> {
    check_temperature(temperature)?;
    check_rel_tol(rel_tol)?;
    for w in [omega_eff_1, omega_eff_2] {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::Domain(format!(
                "effective plasma energy must be finite and >= 0, got {w} eV"
            )));
        }
    }
    let (per_radius, _) =
        f0_te_per_radius_ev(geometry.gap, temperature, omega_eff_1, omega_eff_2, rel_tol);
    Ok(per_radius_to_force(per_radius, geometry))
}

/// Zero-frequency TE kernel per unit radius in eV/nm², with error estimate.
fn f0_te_per_radius_ev(
    gap: f64,
    temperature: f64,
    omega_eff_1: f64,
    omega_eff_2: f64,
    rel_tol: f64,
) -> (f64, f64) {
    if omega_eff_1 == 0.0 || omega_eff_2 == 0.0 {
        return (0.0, 0.0);
    }
    let kappa1 = omega_eff_1 / HBAR_C;
    let kappa2 = omega_eff_2 / HBAR_C;
    let f = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let k_perp = y / (2.0 * gap);
        let r1 = plasma_form_parts(kappa1, k_perp);
        let r2 = plasma_form_parts(kappa2, k_perp);
        y * log_factor(r1, r2, (-y).exp())
    };
    let out = integrate(&f, 0.0, Y_MAX, rel_tol);
    let prefactor = K_B * temperature / (8.0 * gap * gap);
    (prefactor * out.value, prefactor * out.abs_error)
}

/// All l ≥ 1 terms per unit radius in eV/nm², error fields scaled to N.
fn f1_tail_per_radius_ev(
    geometry: &SphereGeometry,
    config: &CavityConfig,
) -> Result<MatsubaraTail> {
    let gap = config.gap;
    let temperature = config.temperature;
    let prefactor = K_B * temperature / (4.0 * gap * gap);
    let quad_rel_tol = config.quad_rel_tol;
    let term = |l: u64| -> (f64, f64) {
        let xi = matsubara(temperature, l);
        let y_l = 2.0 * gap * xi / HBAR_C;
        if y_l >= Y_MAX {
            return (0.0, 0.0);
        }
        let eps1 = config
            .plate1
            .material
            .permittivity_imaginary(xi, temperature)
            .expect("xi > 0 for l >= 1");
        let eps2 = config
            .plate2
            .material
            .permittivity_imaginary(xi, temperature)
            .expect("xi > 0 for l >= 1");
        let f = |y: f64| {
            let k_perp = ((y - y_l) * (y + y_l)).sqrt() / (2.0 * gap);
            let exp_neg_y = (-y).exp();
            let (te1, tm1) = fresnel_parts(eps1, xi, k_perp);
            let (te2, tm2) = fresnel_parts(eps2, xi, k_perp);
            y * (log_factor(te1, te2, exp_neg_y) + log_factor(tm1, tm2, exp_neg_y))
        };
        let out = integrate(&f, y_l, Y_MAX, quad_rel_tol);
        (out.value, out.abs_error)
    };
    let force_scale = prefactor * geometry.radius_nm() * NEWTON_PER_EV_NM;
    match matsubara_sum(&term, config.sum_rel_tol, config.l_max_cap) {
        Ok(mut tail) => {
            tail.max_quad_error *= force_scale;
            Ok(tail)
        }
        Err(Error::NonConvergence {
            partial,
            bound,
            l_reached,
        }) => Err(Error::NonConvergence {
            partial: partial * force_scale,
            bound: bound * force_scale,
            l_reached,
        }),
        Err(e) => Err(e),
    }
}

/// Full sphere-plate force assembly with the same prescription routing as
/// the plane-parallel pressure. The cavity config supplies materials,
/// temperature, and tolerances; its gap must equal the geometry's.
pub fn f_ps(geometry: &SphereGeometry, config: &CavityConfig) -> Result<ForceBreakdown> {
    config.validate()?;
    SphereGeometry::new(geometry.radius, geometry.gap)?;
    if config.gap != geometry.gap {
        return Err(Error::Domain(format!(
            "cavity gap ({} nm) and sphere-plate gap ({} nm) must agree",
            config.gap, geometry.gap
        )));
    }
    let omega_1 = te_zero_omega_eff(&config.plate1, config.prescription);
    let omega_2 = te_zero_omega_eff(&config.plate2, config.prescription);
    let (f0_te_per, f0_te_err_per) = f0_te_per_radius_ev(
        config.gap,
        config.temperature,
        omega_1,
        omega_2,
        config.quad_rel_tol,
    );
    let f0_tm_per = if config.plate1.material.omega_p > 0.0 && config.plate2.material.omega_p > 0.0
    {
        f0_tm_per_radius_ev(config.gap, config.temperature)
    } else {
        0.0
    };
    let tail = f1_tail_per_radius_ev(geometry, config)?;
    let prefactor_1 = K_B * config.temperature / (4.0 * config.gap * config.gap);

    let f0_te = per_radius_to_force(f0_te_per, geometry);
    let f0_tm = per_radius_to_force(f0_tm_per, geometry);
    let f1 = per_radius_to_force(tail.value * prefactor_1, geometry);
    let total = f0_te + f0_tm + f1;
    Ok(ForceBreakdown {
        f0_te,
        f0_tm,
        f1,
        total,
        l_used: tail.l_used,
        max_quad_error: per_radius_to_force(f0_te_err_per, geometry).max(tail.max_quad_error),
    })
}

/// Scale a per-unit-radius kernel (eV/nm²) to a force in N. Multiplying by
/// R last keeps every result exactly linear in the radius.
fn per_radius_to_force(per_radius_ev: f64, geometry: &SphereGeometry) -> f64 {
    per_radius_ev * geometry.radius_nm() * NEWTON_PER_EV_NM
}

fn check_temperature(temperature: f64) -> Result<()> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be finite and > 0, got {temperature} K"
        )));
    }
    Ok(())
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol <= TOL_CEILING) {
        return Err(Error::Domain(format!(
            "relative tolerance must lie in (0, {TOL_CEILING}], got {rel_tol}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{MaterialModel, ZeroModePrescription};

    fn geometry(radius_um: f64, gap_nm: f64) -> SphereGeometry {
        SphereGeometry::new(radius_um, gap_nm).unwrap()
    }

    #[test]
    fn geometry_validation() {
        assert!(SphereGeometry::new(200.0, 150.0).is_ok());
        // a/R = 0.1 is beyond the proximity cap.
        assert!(matches!(
            SphereGeometry::new(1.0, 100.0),
            Err(Error::Geometry(_))
        ));
        assert!(SphereGeometry::new(-1.0, 100.0).is_err());
        assert!(SphereGeometry::new(200.0, 5.0).is_err());
    }

    #[test]
    fn f0_tm_reference_value() {
        let f = f0_tm_ps(&geometry(200.0, 1000.0), 300.0).unwrap();
        assert!((f / 1.245e-13 - 1.0).abs() < 5e-4);
    }

    #[test]
    fn f0_tm_quadratic_scaling_is_exact() {
        let f1 = f0_tm_ps(&geometry(200.0, 1000.0), 300.0).unwrap();
        let f2 = f0_tm_ps(&geometry(200.0, 2000.0), 300.0).unwrap();
        assert_eq!(f2, f1 / 4.0);
    }

    #[test]
    fn f0_tm_numeric_matches_closed_form() {
        let g = geometry(200.0, 1000.0);
        let closed = f0_tm_ps(&g, 300.0).unwrap();
        let numeric = f0_tm_ps_numeric(&g, 300.0, 1e-10).unwrap();
        assert!((numeric / closed - 1.0).abs() < 1e-9);
    }

    #[test]
    fn f0_te_bounds_and_zeros() {
        let g = geometry(200.0, 150.0);
        assert_eq!(f0_te_ps(&g, 5.0, 0.0, 8.7, 1e-10).unwrap(), 0.0);
        // Nb plates at 5 K with the London screening energy.
        let nb = MaterialModel::niobium();
        let omega = HBAR_C / nb.london_depth(5.0).unwrap();
        let te = f0_te_ps(&g, 5.0, omega, omega, 1e-10).unwrap();
        let tm = f0_tm_ps(&g, 5.0).unwrap();
        assert!(te > 0.0 && te < tm);
        // Perfect-reflector limit.
        let ideal = f0_te_ps(&g, 5.0, 1e9, 1e9, 1e-12).unwrap();
        assert!((ideal / tm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn force_is_exactly_linear_in_radius() {
        let config = CavityConfig::new(
            1000.0,
            300.0,
            MaterialModel::gold(),
            MaterialModel::gold(),
            ZeroModePrescription::Plasma,
        )
        .unwrap();
        let f1 = f_ps(&geometry(100.0, 1000.0), &config).unwrap();
        let f2 = f_ps(&geometry(200.0, 1000.0), &config).unwrap();
        assert_eq!(f2.total.to_bits(), (2.0 * f1.total).to_bits());
        assert_eq!(f2.f0_te.to_bits(), (2.0 * f1.f0_te).to_bits());
        assert_eq!(f2.f1.to_bits(), (2.0 * f1.f1).to_bits());
    }

    #[test]
    fn force_total_is_exact_sum_and_decreases_with_gap() {
        let make = |gap: f64| {
            let config = CavityConfig::new(
                gap,
                300.0,
                MaterialModel::gold(),
                MaterialModel::gold(),
                ZeroModePrescription::Drude,
            )
            .unwrap();
            f_ps(&geometry(200.0, gap), &config).unwrap()
        };
        let near = make(500.0);
        let far = make(1000.0);
        assert_eq!(
            near.total.to_bits(),
            (near.f0_te + near.f0_tm + near.f1).to_bits()
        );
        assert!(near.total > far.total);
        assert!(near.f0_te == 0.0);
    }

    #[test]
    fn vacuum_plates_feel_no_force() {
        let config = CavityConfig::new(
            1000.0,
            300.0,
            MaterialModel::plasma(0.0).unwrap(),
            MaterialModel::plasma(0.0).unwrap(),
            ZeroModePrescription::Plasma,
        )
        .unwrap();
        let f = f_ps(&geometry(200.0, 1000.0), &config).unwrap();
        assert_eq!(f.total, 0.0);
    }

    #[test]
    fn gap_mismatch_is_rejected() {
        let config = CavityConfig::new(
            1000.0,
            300.0,
            MaterialModel::gold(),
            MaterialModel::gold(),
            ZeroModePrescription::Drude,
        )
        .unwrap();
        assert!(f_ps(&geometry(200.0, 500.0), &config).is_err());
    }
}
