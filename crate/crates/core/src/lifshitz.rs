//! Plane-parallel thermal Casimir pressure.
//!
//! At temperature T and gap a, the pressure between two thick plates is the
//! Matsubara sum
//!
//! ```text
//!     P(a, T) = (k_B T/π) Σ'_{l≥0} ∫₀^∞ k⊥ dk⊥ q_l
//!               Σ_{α=TE,TM} [e^{2 a q_l}/(r_α⁽¹⁾ r_α⁽²⁾) − 1]⁻¹,
//! ```
//!
//! with ξ_l = 2π k_B T l the Matsubara energies, q_l = √(k⊥² + ξ_l²/(ħc)²),
//! and the prime giving the l = 0 term half weight. A positive value is an
//! attraction. The azimuthal integration is already performed (d²k⊥ = 2π k⊥ dk⊥).
//!
//! The sum splits into three pieces, reported separately:
//!
//! * `p0_tm` — the zero-frequency TM mode. Metals reflect it perfectly, so it
//!   takes its maximal closed form k_B T ζ(3)/(8π a³).
//! * `p0_te` — the zero-frequency TE mode, the prescription-dependent piece:
//!   zero for normal metals under the dissipative extrapolation, the plasma
//!   form otherwise.
//! * `p1` — everything at l ≥ 1, where the two prescriptions coincide.
//!
//! Numerically, each integral is transformed with y = 2 a q_l so the
//! integrand decays like e^{−y}; y is truncated at 60 (the tail is below
//! 10⁻²⁶ of the peak) and integrated adaptively. The Matsubara sum may
//! evaluate terms concurrently but always reduces them in ascending l with
//! compensated accumulation, so results are bit-identical for any worker
//! count. Pressures are returned in Pa.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::constants::{HBAR_C, K_B, MIN_GAP_NM, PA_PER_EV_NM3, Y_MAX, ZETA_3};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::materials::{
    fresnel_parts, plasma_form_parts, te_zero_omega_eff, MaterialModel, PlateState, Reflection,
    ZeroModePrescription,
};
use crate::quad::integrate;

/// Default relative tolerance for each transverse-wavevector integral.
pub const QUAD_REL_TOL_DEFAULT: f64 = 1e-10;
/// Default relative tolerance terminating the Matsubara sum.
pub const SUM_REL_TOL_DEFAULT: f64 = 1e-12;
/// Default hard cap on the Matsubara index.
pub const L_MAX_CAP_DEFAULT: u64 = 1_000_000;

/// Loosest tolerance accepted for either knob.
const TOL_CEILING: f64 = 1e-4;

/// How many Matsubara terms are evaluated concurrently per batch. Terms are
/// still folded in ascending order, so this only affects speed.
const CHUNK: u64 = 64;

/// A fully specified plane-parallel cavity evaluation.
#[derive(Debug, Clone)]
pub struct CavityConfig {
    /// Plate separation a in nm.
    pub gap: f64,
    /// Common temperature T in K.
    pub temperature: f64,
    /// First plate.
    pub plate1: PlateState,
    /// Second plate.
    pub plate2: PlateState,
    /// Zero-frequency TE extrapolation in force.
    pub prescription: ZeroModePrescription,
    /// Relative tolerance of each k⊥ integral.
    pub quad_rel_tol: f64,
    /// Relative termination tolerance of the Matsubara sum.
    pub sum_rel_tol: f64,
    /// Hard cap on the Matsubara index before giving up.
    pub l_max_cap: u64,
}

impl CavityConfig {
    /// Cavity of two materials held at one temperature, with default
    /// numerical tolerances.
    pub fn new(
        gap: f64,
        temperature: f64,
        material1: MaterialModel,
        material2: MaterialModel,
        prescription: ZeroModePrescription,
    ) -> Result<Self> {
        let config = Self {
            gap,
            temperature,
            plate1: PlateState::new(material1, temperature),
            plate2: PlateState::new(material2, temperature),
            prescription,
            quad_rel_tol: QUAD_REL_TOL_DEFAULT,
            sum_rel_tol: SUM_REL_TOL_DEFAULT,
            l_max_cap: L_MAX_CAP_DEFAULT,
        };
        config.validate()?;
        Ok(config)
    }

    /// Replace the numerical tolerances, revalidating.
    pub fn with_tolerances(mut self, quad_rel_tol: f64, sum_rel_tol: f64) -> Result<Self> {
        self.quad_rel_tol = quad_rel_tol;
        self.sum_rel_tol = sum_rel_tol;
        self.validate()?;
        Ok(self)
    }

    /// Check every invariant the numerical operations rely on.
    pub fn validate(&self) -> Result<()> {
        if !self.gap.is_finite() || self.gap < MIN_GAP_NM {
            return Err(Error::Domain(format!(
                "gap must be >= {MIN_GAP_NM} nm (local-optics models are not \
                 credible below that), got {} nm",
                self.gap
            )));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be finite and > 0, got {} K",
                self.temperature
            )));
        }
        for (name, tol) in [
            ("quad_rel_tol", self.quad_rel_tol),
            ("sum_rel_tol", self.sum_rel_tol),
        ] {
            if !(tol > 0.0 && tol <= TOL_CEILING) {
                return Err(Error::Domain(format!(
                    "{name} must lie in (0, {TOL_CEILING}], got {tol}"
                )));
            }
        }
        if self.l_max_cap < 3 {
            return Err(Error::Domain(format!(
                "l_max_cap must be at least 3, got {}",
                self.l_max_cap
            )));
        }
        if self.plate1.temperature != self.temperature
            || self.plate2.temperature != self.temperature
        {
            return Err(Error::Domain(
                "plate temperatures must equal the cavity temperature".into(),
            ));
        }
        Ok(())
    }
}

/// The three-term decomposition of the pressure, in Pa.
#[derive(Debug, Clone)]
pub struct PressureBreakdown {
    /// Zero-frequency TE contribution (0 under the dissipative prescription
    /// for normal plates).
    pub p0_te: f64,
    /// Zero-frequency TM contribution.
    pub p0_tm: f64,
    /// Sum of all l ≥ 1 Matsubara terms.
    pub p1: f64,
    /// p0_te + p0_tm + p1, positive for attraction.
    pub total: f64,
    /// Highest Matsubara index evaluated before the sum terminated.
    pub l_used: u64,
    /// Largest estimated absolute quadrature error among all integrals, Pa.
    pub max_quad_error: f64,
}

/// Matsubara energy ħξ_l = 2π k_B T l in eV.
pub fn matsubara(temperature: f64, l: u64) -> f64 {
    2.0 * PI * K_B * temperature * l as f64
}

/// One round-trip factor [e^y/(r₁r₂) − 1]⁻¹ = r₁r₂/(e^y − 1 + (1 − r₁r₂)),
/// with 1 − r₁r₂ assembled from the complements so nothing cancels as r → 1.
fn round_trip(r1: Reflection, r2: Reflection, expm1_y: f64) -> f64 {
    let rr = r1.r * r2.r;
    if rr == 0.0 {
        return 0.0;
    }
    let one_minus_rr = r1.one_minus_r + r1.r * r2.one_minus_r;
    rr / (expm1_y + one_minus_rr)
}

/// Closed-form zero-frequency TM pressure k_B T ζ(3)/(8π a³), the largest
/// value the mode can take (perfect reflection), in Pa.
pub fn p0_tm(gap: f64, temperature: f64) -> Result<f64> {
    check_gap_temperature(gap, temperature)?;
    Ok(p0_tm_ev(gap, temperature) * PA_PER_EV_NM3)
}

fn p0_tm_ev(gap: f64, temperature: f64) -> f64 {
    K_B * temperature * ZETA_3 / (8.0 * PI * gap.powi(3))
}

/// The zero-frequency TM pressure by direct quadrature of
/// (k_B T/(16π a³)) ∫₀^∞ y²/(e^y − 1) dy; agrees with [`p0_tm`] to the
/// quadrature tolerance (the integral is 2ζ(3)).
pub fn p0_tm_numeric(gap: f64, temperature: f64, rel_tol: f64) -> Result<f64> {
    check_gap_temperature(gap, temperature)?;
    check_rel_tol(rel_tol)?;
    let f = |y: f64| if y > 0.0 { y * y / y.exp_m1() } else { 0.0 };
    let out = integrate(&f, 0.0, Y_MAX, rel_tol);
    Ok(K_B * temperature / (16.0 * PI * gap.powi(3)) * out.value * PA_PER_EV_NM3)
}

/// Zero-frequency TE pressure by quadrature, in Pa, for plates whose TE zero
/// mode reflects with the plasma form at effective plasma energies
/// `omega_eff_1`, `omega_eff_2` (eV; distinct values support mixed setups).
/// Exactly 0 when either energy is 0 — a plate whose TE zero mode reflects
/// nothing kills the whole term. Always lies in [0, p0_tm].
pub fn p0_te_numeric(
    gap: f64,
    temperature: f64,
    omega_eff_1: f64,
    omega_eff_2: f64,
    rel_tol: f64,
) -> Result<f64> {
    check_gap_temperature(gap, temperature)?;
    check_rel_tol(rel_tol)?;
    for w in [omega_eff_1, omega_eff_2] {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::Domain(format!(
                "effective plasma energy must be finite and >= 0, got {w} eV"
            )));
        }
    }
    let (value, _) = p0_te_integral_ev(gap, temperature, omega_eff_1, omega_eff_2, rel_tol);
    Ok(value * PA_PER_EV_NM3)
}

/// Zero-frequency TE integral in eV/nm³ with its absolute error estimate.
fn p0_te_integral_ev(
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
        y * y * round_trip(r1, r2, y.exp_m1())
    };
    let out = integrate(&f, 0.0, Y_MAX, rel_tol);
    let prefactor = K_B * temperature / (16.0 * PI * gap.powi(3));
    (prefactor * out.value, prefactor * out.abs_error)
}

/// Small-skin-depth closed form for the zero-frequency TE pressure:
///
/// ```text
///     k_B T ζ(3) / (8π (a + 2δ)³),
/// ```
///
/// the resummation of the series in δ/a (its Taylor expansion begins
/// 1 − 6δ/a + 24δ²/a² when referred to a³). `delta_eff` is the effective
/// penetration length ħc/Ω in nm; δ = 0 reproduces [`p0_tm`] exactly, and
/// the relative error against [`p0_te_numeric`] stays below 5(δ/a)³ over
/// the admitted range.
pub fn p0_te_expansion(gap: f64, temperature: f64, delta_eff: f64) -> Result<f64> {
    check_gap_temperature(gap, temperature)?;
    if !delta_eff.is_finite() || delta_eff < 0.0 {
        return Err(Error::Domain(format!(
            "penetration length must be finite and >= 0, got {delta_eff} nm"
        )));
    }
    let ratio = delta_eff / gap;
    const LIMIT: f64 = 0.2;
    if ratio >= LIMIT {
        return Err(Error::ExpansionValidity {
            ratio,
            limit: LIMIT,
        });
    }
    let reach = gap + 2.0 * delta_eff;
    Ok(K_B * temperature * ZETA_3 / (8.0 * PI * reach.powi(3)) * PA_PER_EV_NM3)
}

/// Outcome of a terminated Matsubara tail sum.
#[derive(Debug, Clone, Copy)]
pub struct MatsubaraTail {
    /// Sum of all evaluated l ≥ 1 terms, Pa.
    pub value: f64,
    /// Highest index evaluated.
    pub l_used: u64,
    /// Largest estimated absolute quadrature error among the terms, Pa.
    pub max_quad_error: f64,
}

/// Sum `term(l)` for l = 1, 2, … until three consecutive terms fall to
/// `sum_rel_tol` of the accumulated sum (or below), or `l_max_cap` is
/// reached. Terms are `(value, quadrature abs error)`; batches may be
/// evaluated concurrently but the fold is strictly ascending in l with
/// compensated accumulation, so the result is independent of worker count.
pub(crate) fn matsubara_sum<F>(term: &F, sum_rel_tol: f64, l_max_cap: u64) -> Result<MatsubaraTail>
where
    F: Fn(u64) -> (f64, f64) + Sync,
{
    let mut sum = KahanSum::new();
    let mut max_quad_error = 0.0_f64;
    let mut consecutive_small = 0_u32;
    let mut last_term = 0.0_f64;
    let mut l = 1_u64;
    while l <= l_max_cap {
        let hi = l.saturating_add(CHUNK - 1).min(l_max_cap);
        let indices: Vec<u64> = (l..=hi).collect();
        let evaluated: Vec<(f64, f64)> = indices.par_iter().map(|&li| term(li)).collect();
        for (&li, &(value, quad_error)) in indices.iter().zip(&evaluated) {
            sum.add(value);
            max_quad_error = max_quad_error.max(quad_error);
            last_term = value;
            if value.abs() <= sum_rel_tol * sum.value().abs() {
                consecutive_small += 1;
                if consecutive_small >= 3 {
                    return Ok(MatsubaraTail {
                        value: sum.value(),
                        l_used: li,
                        max_quad_error,
                    });
                }
            } else {
                consecutive_small = 0;
            }
        }
        l = hi + 1;
    }
    Err(Error::NonConvergence {
        partial: sum.value(),
        bound: last_term.abs(),
        l_reached: l_max_cap,
    })
}

/// All l ≥ 1 Matsubara terms in eV/nm³, error fields scaled to Pa.
fn p1_tail_ev(config: &CavityConfig) -> Result<MatsubaraTail> {
    let gap = config.gap;
    let temperature = config.temperature;
    let prefactor = K_B * temperature / (8.0 * PI * gap.powi(3));
    let quad_rel_tol = config.quad_rel_tol;
    let term = |l: u64| -> (f64, f64) {
        let xi = matsubara(temperature, l);
        let y_l = 2.0 * gap * xi / HBAR_C;
        if y_l >= Y_MAX {
            return (0.0, 0.0);
        }
        // xi > 0 is guaranteed for l >= 1 with a validated temperature.
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
            let expm1_y = y.exp_m1();
            let (te1, tm1) = fresnel_parts(eps1, xi, k_perp);
            let (te2, tm2) = fresnel_parts(eps2, xi, k_perp);
            y * y * (round_trip(te1, te2, expm1_y) + round_trip(tm1, tm2, expm1_y))
        };
        let out = integrate(&f, y_l, Y_MAX, quad_rel_tol);
        (out.value, out.abs_error)
    };
    match matsubara_sum(&term, config.sum_rel_tol, config.l_max_cap) {
        Ok(mut tail) => {
            tail.max_quad_error *= prefactor * PA_PER_EV_NM3;
            Ok(tail)
        }
        Err(Error::NonConvergence {
            partial,
            bound,
            l_reached,
        }) => Err(Error::NonConvergence {
            partial: partial * prefactor * PA_PER_EV_NM3,
            bound: bound * prefactor * PA_PER_EV_NM3,
            l_reached,
        }),
        Err(e) => Err(e),
    }
}

/// Sum of all l ≥ 1 Matsubara terms of the pressure, in Pa, with the
/// termination diagnostics.
pub fn p1(config: &CavityConfig) -> Result<MatsubaraTail> {
    config.validate()?;
    let prefactor = K_B * config.temperature / (8.0 * PI * config.gap.powi(3));
    let mut tail = p1_tail_ev(config)?;
    tail.value *= prefactor * PA_PER_EV_NM3;
    Ok(tail)
}

/// Full pressure assembly: routes each plate's zero-mode reflection through
/// the prescription, adds the closed-form TM zero mode (plates with any free
/// electrons reflect it perfectly), and sums the l ≥ 1 tail.
pub fn pressure(config: &CavityConfig) -> Result<PressureBreakdown> {
    config.validate()?;
    let omega_1 = te_zero_omega_eff(&config.plate1, config.prescription);
    let omega_2 = te_zero_omega_eff(&config.plate2, config.prescription);
    let (p0_te_ev, p0_te_err_ev) = p0_te_integral_ev(
        config.gap,
        config.temperature,
        omega_1,
        omega_2,
        config.quad_rel_tol,
    );
    let p0_tm_ev = if config.plate1.material.omega_p > 0.0 && config.plate2.material.omega_p > 0.0
    {
        p0_tm_ev(config.gap, config.temperature)
    } else {
        0.0
    };
    let tail = p1_tail_ev(config)?;
    let prefactor_1 = K_B * config.temperature / (8.0 * PI * config.gap.powi(3));

    let p0_te = p0_te_ev * PA_PER_EV_NM3;
    let p0_tm = p0_tm_ev * PA_PER_EV_NM3;
    let p1 = tail.value * prefactor_1 * PA_PER_EV_NM3;
    let total = p0_te + p0_tm + p1;
    Ok(PressureBreakdown {
        p0_te,
        p0_tm,
        p1,
        total,
        l_used: tail.l_used,
        max_quad_error: (p0_te_err_ev * PA_PER_EV_NM3).max(tail.max_quad_error),
    })
}

fn check_gap_temperature(gap: f64, temperature: f64) -> Result<()> {
    if !gap.is_finite() || gap < MIN_GAP_NM {
        return Err(Error::Domain(format!(
            "gap must be >= {MIN_GAP_NM} nm, got {gap} nm"
        )));
    }
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

    fn gold_cavity(gap: f64, temperature: f64) -> CavityConfig {
        CavityConfig::new(
            gap,
            temperature,
            MaterialModel::gold(),
            MaterialModel::gold(),
            ZeroModePrescription::Drude,
        )
        .unwrap()
    }

    #[test]
    fn matsubara_reference_points() {
        assert!((matsubara(300.0, 1) - 0.162_432_905_2).abs() < 1e-9);
        assert!((matsubara(9.2, 1) - 4.981_275_76e-3).abs() < 1e-11);
        assert_eq!(matsubara(300.0, 0), 0.0);
        assert_eq!(matsubara(300.0, 2), 2.0 * matsubara(300.0, 1));
    }

    #[test]
    fn p0_tm_reference_value() {
        let p = p0_tm(1000.0, 300.0).unwrap();
        assert!((p / 1.981_023_851_906_022_79e-4 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn p0_tm_cubic_scaling_is_exact() {
        assert_eq!(
            p0_tm(2000.0, 300.0).unwrap(),
            p0_tm(1000.0, 300.0).unwrap() / 8.0
        );
    }

    #[test]
    fn p0_tm_numeric_matches_closed_form() {
        let closed = p0_tm(1000.0, 300.0).unwrap();
        let numeric = p0_tm_numeric(1000.0, 300.0, 1e-10).unwrap();
        assert!((numeric / closed - 1.0).abs() < 1e-10);
    }

    #[test]
    fn p0_te_reference_value() {
        let p = p0_te_numeric(2000.0, 300.0, 9.0, 9.0, 1e-10).unwrap();
        assert!((p / 2.320_302_869_53e-5 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn p0_te_vanishes_with_one_dead_plate() {
        assert_eq!(p0_te_numeric(1000.0, 300.0, 9.0, 0.0, 1e-10).unwrap(), 0.0);
        assert_eq!(p0_te_numeric(1000.0, 300.0, 0.0, 0.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn p0_te_perfect_reflector_limit() {
        let p = p0_te_numeric(2000.0, 300.0, 1e9, 1e9, 1e-12).unwrap();
        let tm = p0_tm(2000.0, 300.0).unwrap();
        assert!((p / tm - 1.0).abs() < 1e-8);
        assert!(p <= tm);
    }

    #[test]
    fn p0_te_bounded_by_tm() {
        for (gap, omega) in [(500.0, 9.0), (150.0, 8.7), (2000.0, 3.0)] {
            let te = p0_te_numeric(gap, 300.0, omega, omega, 1e-10).unwrap();
            let tm = p0_tm(gap, 300.0).unwrap();
            assert!(te > 0.0 && te <= tm);
        }
    }

    #[test]
    fn expansion_reference_and_guard() {
        // Resummed small-δ form at δ = ħc/(9 eV).
        let delta = HBAR_C / 9.0;
        let p = p0_te_expansion(2000.0, 300.0, delta).unwrap();
        assert!((p / 2.320_290_521_48e-5 - 1.0).abs() < 1e-9);
        // δ = 0 reproduces the TM closed form bitwise.
        assert_eq!(
            p0_te_expansion(1000.0, 300.0, 0.0).unwrap(),
            p0_tm(1000.0, 300.0).unwrap()
        );
        // Validity guard at δ/a = 0.2.
        assert!(matches!(
            p0_te_expansion(100.0, 300.0, 21.0),
            Err(Error::ExpansionValidity { .. })
        ));
        assert!(p0_te_expansion(110.0, 300.0, 21.0).is_ok());
    }

    #[test]
    fn expansion_tracks_numeric_at_moderate_skin_depth() {
        // δ/a = 0.05: the resummed form is good to 5(δ/a)³ = 6.25e-4.
        let gap = 2000.0;
        let delta = 0.05 * gap;
        let omega = HBAR_C / delta;
        let numeric = p0_te_numeric(gap, 300.0, omega, omega, 1e-11).unwrap();
        let expansion = p0_te_expansion(gap, 300.0, delta).unwrap();
        assert!((expansion / numeric - 1.0).abs() < 5.0 * 0.05_f64.powi(3));
    }

    #[test]
    fn p1_vacuum_plates_is_zero() {
        let config = CavityConfig::new(
            1000.0,
            300.0,
            MaterialModel::plasma(0.0).unwrap(),
            MaterialModel::plasma(0.0).unwrap(),
            ZeroModePrescription::Drude,
        )
        .unwrap();
        let tail = p1(&config).unwrap();
        assert_eq!(tail.value, 0.0);
        assert_eq!(tail.l_used, 3);
    }

    #[test]
    fn p1_ignores_superconducting_state() {
        let sc = CavityConfig::new(
            500.0,
            5.0,
            MaterialModel::niobium(),
            MaterialModel::niobium(),
            ZeroModePrescription::Drude,
        )
        .unwrap();
        let normal = CavityConfig::new(
            500.0,
            5.0,
            MaterialModel::niobium().as_normal(),
            MaterialModel::niobium().as_normal(),
            ZeroModePrescription::Drude,
        )
        .unwrap();
        let a = p1(&sc).unwrap();
        let b = p1(&normal).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.l_used, b.l_used);
    }

    #[test]
    fn pressure_total_is_exact_sum() {
        let b = pressure(&gold_cavity(1000.0, 300.0)).unwrap();
        assert_eq!(b.total.to_bits(), (b.p0_te + b.p0_tm + b.p1).to_bits());
        assert!(b.total > 0.0);
        assert!(b.p0_te == 0.0); // normal metal, dissipative prescription
        assert!(b.max_quad_error < 1e-8 * b.total);
    }

    #[test]
    fn pressure_prescription_ratio_at_large_separation() {
        // At 50 μm and 300 K the first Matsubara term is already beyond the
        // integration window, so only zero modes survive; the plasma
        // prescription keeps the TE zero mode and nearly doubles the result.
        let drude = pressure(&gold_cavity(50_000.0, 300.0)).unwrap();
        let mut config = gold_cavity(50_000.0, 300.0);
        config.prescription = ZeroModePrescription::Plasma;
        let plasma = pressure(&config).unwrap();
        assert_eq!(drude.p1, 0.0);
        let ratio = plasma.total / drude.total;
        assert!((ratio - 2.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn pressure_decreases_with_gap() {
        let totals: Vec<f64> = [500.0, 1000.0, 2000.0, 4000.0]
            .iter()
            .map(|&gap| pressure(&gold_cavity(gap, 300.0)).unwrap().total)
            .collect();
        for pair in totals.windows(2) {
            assert!(pair[0] > pair[1]);
        }
    }

    #[test]
    fn zero_mode_weight_doubling() {
        let mut config = gold_cavity(1000.0, 300.0);
        config.prescription = ZeroModePrescription::Plasma;
        let b = pressure(&config).unwrap();
        let doubled = 2.0 * b.p0_te + 2.0 * b.p0_tm + b.p1;
        let change = doubled - b.total;
        let expected = b.p0_te + b.p0_tm;
        assert!((change / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_reports_partial() {
        let mut config = gold_cavity(150.0, 5.0);
        config.l_max_cap = 20; // far too few terms at 5 K
        match pressure(&config) {
            Err(Error::NonConvergence {
                partial, l_reached, ..
            }) => {
                assert!(partial > 0.0);
                assert_eq!(l_reached, 20);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn config_validation_rejects_bad_inputs() {
        let make = |gap: f64, temperature: f64| {
            CavityConfig::new(
                gap,
                temperature,
                MaterialModel::gold(),
                MaterialModel::gold(),
                ZeroModePrescription::Drude,
            )
        };
        assert!(make(5.0, 300.0).is_err());
        assert!(make(1000.0, 0.0).is_err());
        assert!(make(1000.0, f64::NAN).is_err());
        assert!(gold_cavity(1000.0, 300.0).with_tolerances(1e-3, 1e-12).is_err());
        assert!(gold_cavity(1000.0, 300.0).with_tolerances(0.0, 1e-12).is_err());
    }
}
