//! Cross-module physics invariants exercised through the public API.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use casimir_core::lifshitz::{p0_te_numeric, p0_tm, p0_tm_numeric, pressure, CavityConfig};
use casimir_core::materials::{MaterialModel, ZeroModePrescription};
use casimir_core::pfa::{f_ps, SphereGeometry};

fn cavity(
    gap: f64,
    temperature: f64,
    material: MaterialModel,
    prescription: ZeroModePrescription,
) -> CavityConfig {
    CavityConfig::new(gap, temperature, material.clone(), material, prescription).unwrap()
}

#[test]
fn tm_zero_mode_quadrature_matches_closed_form_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let gap = rng.gen_range(50.0..5000.0);
        let temperature = rng.gen_range(1.0..400.0);
        let numeric = p0_tm_numeric(gap, temperature, 1e-10).unwrap();
        let closed = p0_tm(gap, temperature).unwrap();
        assert!(
            (numeric / closed - 1.0).abs() < 1e-9,
            "a = {gap} nm, T = {temperature} K: {numeric} vs {closed}"
        );
    }
}

#[test]
fn superconducting_te_zero_mode_vanishes_at_the_transition() {
    // Approaching T_c the London depth diverges, so the TE zero-mode
    // pressure must fade out smoothly: no jump survives at the transition.
    let just_below = 9.2 * (1.0 - 1e-9);
    let config = cavity(
        100.0,
        just_below,
        MaterialModel::niobium(),
        ZeroModePrescription::Drude,
    );
    let breakdown = pressure(&config).unwrap();
    assert!(breakdown.p0_te >= 0.0);
    assert!(
        breakdown.p0_te <= 1e-6 * breakdown.p0_tm,
        "TE zero mode {} Pa has not vanished against TM {} Pa",
        breakdown.p0_te,
        breakdown.p0_tm
    );
}

#[test]
fn prescription_gap_is_exactly_the_te_zero_mode() {
    // The two prescriptions may only differ in the l = 0 TE term, so the
    // pressure gap must equal the plasma-prescription TE zero mode.
    let gold = MaterialModel::gold();
    let plasma = pressure(&cavity(
        500.0,
        300.0,
        gold.clone(),
        ZeroModePrescription::Plasma,
    ))
    .unwrap();
    let drude = pressure(&cavity(500.0, 300.0, gold, ZeroModePrescription::Drude)).unwrap();
    assert_eq!(drude.p0_te, 0.0);
    assert_eq!(plasma.p0_tm.to_bits(), drude.p0_tm.to_bits());
    assert_eq!(plasma.p1.to_bits(), drude.p1.to_bits());
    let gap = plasma.total - drude.total;
    assert!((gap / plasma.p0_te - 1.0).abs() < 1e-12);
}

#[test]
fn pressure_and_force_decay_with_separation() {
    let gold = MaterialModel::gold();
    let pressures: Vec<f64> = [200.0, 400.0, 800.0, 1600.0]
        .iter()
        .map(|&gap| {
            pressure(&cavity(gap, 300.0, gold.clone(), ZeroModePrescription::Drude))
                .unwrap()
                .total
        })
        .collect();
    for pair in pressures.windows(2) {
        assert!(pair[0] > pair[1] && pair[1] > 0.0);
    }
    let forces: Vec<f64> = [300.0, 600.0, 1200.0]
        .iter()
        .map(|&gap| {
            let geometry = SphereGeometry::new(200.0, gap).unwrap();
            let config = cavity(gap, 300.0, gold.clone(), ZeroModePrescription::Drude);
            f_ps(&geometry, &config).unwrap().total
        })
        .collect();
    for pair in forces.windows(2) {
        assert!(pair[0] > pair[1] && pair[1] > 0.0);
    }
}

#[test]
fn worker_count_does_not_change_a_single_bit() {
    let config = cavity(
        2000.0,
        9.0,
        MaterialModel::niobium(),
        ZeroModePrescription::Drude,
    );
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| pressure(&config).unwrap());
    let several = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| pressure(&config).unwrap());
    assert_eq!(single.total.to_bits(), several.total.to_bits());
    assert_eq!(single.p1.to_bits(), several.p1.to_bits());
    assert_eq!(single.l_used, several.l_used);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // The TE zero mode is real screening: never negative, never above the
    // perfectly reflected TM zero mode.
    #[test]
    fn te_zero_mode_stays_between_zero_and_tm(
        gap in 50.0..2000.0f64,
        temperature in 1.0..400.0f64,
        omega in 0.1..100.0f64,
    ) {
        let te = p0_te_numeric(gap, temperature, omega, omega, 1e-10).unwrap();
        let tm = p0_tm(gap, temperature).unwrap();
        prop_assert!(te >= 0.0);
        prop_assert!(te <= tm);
    }
}
