//! Figure-reproduction sweeps: temperature-change deltas on fixed grids.
//!
//! Four sweeps are defined, two parallel-plate and two sphere-plate:
//!
//! 1. pressure deltas versus starting temperature T₁ at a = 150 nm (mPa);
//! 2. pressure deltas versus separation at T₁ = 5 K (mPa);
//! 3. force-per-radius deltas versus T₁ at a = 150 nm (10⁻¹⁰ N/m);
//! 4. force-per-radius deltas versus separation at T₁ = 5 K (10⁻¹⁰ N/m).
//!
//! Each row evaluates the closed-form dissipative-prescription deltas for
//! the Nb–Nb and Nb–Au setups (the CSV columns) plus the plasma-prescription
//! reference delta, kept in memory for property checks. The final
//! temperature is pinned to the transition itself, T₂ = T_c, where the
//! dissipative TE zero mode has died exactly; rows are computed
//! concurrently but emitted in grid order, so output is byte-deterministic.

use std::time::Instant;

use rayon::prelude::*;

use casimir_core::deltas::{
    delta_force_ps, delta_pressure, DeltaRequest, Geometry, Method, Setup,
};
use casimir_core::error::{Error, Result};
use casimir_core::lifshitz::{QUAD_REL_TOL_DEFAULT, SUM_REL_TOL_DEFAULT};
use casimir_core::materials::{MaterialModel, ZeroModePrescription};

use crate::config::describe_material;

/// Points per sweep.
pub const GRID_POINTS: usize = 81;
/// Final temperature of every sweep: the transition itself.
pub const TRANSITION_T2_K: f64 = 9.2;
/// Fixed separation for the temperature sweeps (figures 1 and 3).
pub const FIXED_GAP_NM: f64 = 150.0;
/// Fixed starting temperature for the separation sweeps (figures 2 and 4).
pub const FIXED_T1_K: f64 = 5.0;
/// Sphere radius for the sphere-plate sweeps; the emitted columns are
/// normalized per radius, and the force kernel is exactly linear in R.
pub const SPHERE_RADIUS_UM: f64 = 200.0;

/// One grid point: the swept value (K or μm) and the three deltas in their
/// natural units (Pa for figures 1–2, N for figures 3–4).
#[derive(Debug, Clone)]
pub struct FigureRow {
    /// Swept coordinate: T₁ in K (figures 1, 3) or a in μm (figures 2, 4).
    pub swept: f64,
    /// Dissipative-prescription delta, Nb–Nb setup.
    pub drude_nbnb: f64,
    /// Dissipative-prescription delta, Nb–Au setup.
    pub drude_nbau: f64,
    /// Plasma-prescription reference delta (not a CSV column).
    pub plasma: f64,
}

/// A completed sweep: rows in grid order, resolved-configuration echo, and
/// wall-clock timing.
#[derive(Debug, Clone)]
pub struct RunReport {
    /// Figure number, 1–4.
    pub figure: u8,
    /// Rows in grid order.
    pub rows: Vec<FigureRow>,
    /// Resolved configuration, echoed as `#` comments in the CSV.
    pub provenance: Vec<String>,
    /// Evaluation wall time in seconds (not written to the CSV).
    pub timing: f64,
}

fn is_sphere(figure: u8) -> bool {
    figure >= 3
}

fn sweeps_gap(figure: u8) -> bool {
    figure == 2 || figure == 4
}

/// The swept grid in display units (K or μm), strictly increasing.
pub fn grid(figure: u8) -> Vec<f64> {
    let (lo, hi) = if sweeps_gap(figure) { (0.1, 2.0) } else { (1.0, 9.0) };
    (0..GRID_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64)
        .collect()
}

fn evaluate_row(figure: u8, swept: f64) -> Result<FigureRow> {
    let (gap, t1) = if sweeps_gap(figure) {
        (swept * 1000.0, FIXED_T1_K)
    } else {
        (FIXED_GAP_NM, swept)
    };
    let geometry = if is_sphere(figure) {
        Geometry::SpherePlate {
            radius: SPHERE_RADIUS_UM,
        }
    } else {
        Geometry::ParallelPlates
    };
    let eval = |setup: Setup, prescription: ZeroModePrescription| -> Result<f64> {
        let request = DeltaRequest::new(
            geometry,
            gap,
            t1,
            TRANSITION_T2_K,
            setup,
            prescription,
            Method::ClosedForm,
        )?;
        let result = if is_sphere(figure) {
            delta_force_ps(&request)?
        } else {
            delta_pressure(&request)?
        };
        Ok(result.value)
    };
    let row = FigureRow {
        swept,
        drude_nbnb: eval(Setup::NbNb, ZeroModePrescription::Drude)?,
        drude_nbau: eval(Setup::NbAu, ZeroModePrescription::Drude)?,
        plasma: eval(Setup::NbNb, ZeroModePrescription::Plasma)?,
    };
    // The deltas module's sign and ordering laws must hold at every grid
    // point; a violation here is an internal inconsistency, not bad input.
    if !(row.drude_nbnb < 0.0
        && row.drude_nbau < 0.0
        && row.drude_nbnb.abs() >= row.drude_nbau.abs()
        && row.plasma > 0.0)
    {
        return Err(Error::Domain(format!(
            "figure {figure} row at {swept} violates the delta sign/ordering laws: \
             NbNb {}, NbAu {}, plasma {}",
            row.drude_nbnb, row.drude_nbau, row.plasma
        )));
    }
    Ok(row)
}

/// CSV column names for a figure.
pub fn columns(figure: u8) -> [&'static str; 3] {
    match (sweeps_gap(figure), is_sphere(figure)) {
        (false, false) => ["T1_K", "dP_Dr_NbNb_mPa", "dP_Dr_NbAu_mPa"],
        (true, false) => ["a_um", "dP_Dr_NbNb_mPa", "dP_Dr_NbAu_mPa"],
        (false, true) => [
            "T1_K",
            "dF_over_R_NbNb_1e-10_N_per_m",
            "dF_over_R_NbAu_1e-10_N_per_m",
        ],
        (true, true) => [
            "a_um",
            "dF_over_R_NbNb_1e-10_N_per_m",
            "dF_over_R_NbAu_1e-10_N_per_m",
        ],
    }
}

/// Convert a raw delta to the figure's display unit: mPa for pressures,
/// 10⁻¹⁰ N/m per sphere radius for forces.
fn to_display_units(figure: u8, value: f64) -> f64 {
    if is_sphere(figure) {
        value / (SPHERE_RADIUS_UM * 1e-6) / 1e-10
    } else {
        value * 1e3
    }
}

/// The CSV data rows for a report, in display units.
pub fn csv_rows(report: &RunReport) -> Vec<Vec<f64>> {
    report
        .rows
        .iter()
        .map(|row| {
            vec![
                row.swept,
                to_display_units(report.figure, row.drude_nbnb),
                to_display_units(report.figure, row.drude_nbau),
            ]
        })
        .collect()
}

fn provenance(figure: u8) -> Vec<String> {
    let mut lines = vec![
        format!("casimir figure {figure}"),
        format!(
            "geometry = {}",
            if is_sphere(figure) { "sphere-plate" } else { "parallel-plates" }
        ),
    ];
    if is_sphere(figure) {
        lines.push(format!(
            "radius_um = {SPHERE_RADIUS_UM} (columns are per-radius; the kernel is exactly linear in R)"
        ));
    }
    if sweeps_gap(figure) {
        lines.push(format!("swept = a_um in [0.1, 2], {GRID_POINTS} points"));
        lines.push(format!("t1_K = {FIXED_T1_K}"));
    } else {
        lines.push(format!("swept = T1_K in [1, 9], {GRID_POINTS} points"));
        lines.push(format!("gap_nm = {FIXED_GAP_NM}"));
    }
    lines.push(format!(
        "t2_K = {TRANSITION_T2_K} (the transition; the dissipative TE zero mode vanishes at T2)"
    ));
    lines.push("method = closed-form; columns use the dissipative (drude) prescription".to_string());
    lines.push(format!(
        "nb = {}",
        describe_material(&MaterialModel::niobium())
    ));
    lines.push(format!("au = {}", describe_material(&MaterialModel::gold())));
    lines.push(format!(
        "quad_rel_tol = {QUAD_REL_TOL_DEFAULT:e}, sum_rel_tol = {SUM_REL_TOL_DEFAULT:e}"
    ));
    lines.push(format!(
        "units: {}",
        if is_sphere(figure) {
            "dF_over_R in 1e-10 N/m"
        } else {
            "dP in mPa"
        }
    ));
    lines
}

/// Evaluate a figure sweep. Rows run concurrently; the returned order is
/// the grid order.
pub fn run_figure(figure: u8) -> Result<RunReport> {
    if !(1..=4).contains(&figure) {
        return Err(Error::Domain(format!(
            "figure must be 1, 2, 3, or 4, got {figure}"
        )));
    }
    let start = Instant::now();
    let rows: Result<Vec<FigureRow>> = grid(figure)
        .par_iter()
        .map(|&swept| evaluate_row(figure, swept))
        .collect();
    Ok(RunReport {
        figure,
        rows: rows?,
        provenance: provenance(figure),
        timing: start.elapsed().as_secs_f64(),
    })
}
