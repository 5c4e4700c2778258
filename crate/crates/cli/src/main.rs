//! `casimir` — thermal Casimir pressures, sphere-plate forces, and the
//! temperature-change differentials that distinguish the zero-frequency TE
//! prescriptions.
//!
//! Exit codes: 0 success, 1 validation-suite failure, 2 configuration or
//! domain error, 3 non-convergence, 4 cancellation refusal.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use casimir_cli::config::{self, describe_material, FileConfig};
use casimir_cli::figures;
use casimir_cli::output::{self, sci};
use casimir_cli::validate;
use casimir_core::deltas::{
    delta_force_ps, delta_pressure, DeltaRequest, DeltaResult, Geometry, Method, Setup,
};
use casimir_core::lifshitz::{pressure, CavityConfig};
use casimir_core::materials::{MaterialKind, MaterialModel, ZeroModePrescription};
use casimir_core::pfa::{f_ps, SphereGeometry};
use casimir_core::Error as CoreError;

/// Default final temperature for differentials: just below the transition.
const DEFAULT_T2_K: f64 = 0.99 * 9.2;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Thermal Casimir pressures, sphere-plate forces, and superconducting \
             temperature-change differentials"
)]
struct Cli {
    /// INI configuration file merged under the flags ([material.NAME], [run]).
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parallel-plate pressure breakdown in Pa.
    Pressure(PressureArgs),
    /// Sphere-plate force breakdown in N (proximity approximation).
    Force(ForceArgs),
    /// Pressure or force change between two temperatures.
    Delta(DeltaArgs),
    /// Reproduce one of the four figure sweeps as CSV.
    Figure(FigureArgs),
    /// Run the validation suite.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct PressureArgs {
    /// Plate separation in nm.
    #[arg(long = "gap-nm", value_name = "NM", allow_negative_numbers = true)]
    gap_nm: Option<f64>,
    /// Temperature in K (default 300).
    #[arg(long = "temp-K", value_name = "K", allow_negative_numbers = true)]
    temp_k: Option<f64>,
    /// First plate: nb | au | ideal | a [material.NAME] from --config (default au).
    #[arg(long, value_name = "NAME")]
    plate1: Option<String>,
    /// Second plate (default au).
    #[arg(long, value_name = "NAME")]
    plate2: Option<String>,
    /// Zero-frequency TE extrapolation: drude | plasma (default drude).
    #[arg(long, value_name = "NAME")]
    prescription: Option<String>,
    /// Relative tolerance of the transverse integrals.
    #[arg(long, value_name = "REL", allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Also evaluate with half and double relaxation energies.
    #[arg(long = "gamma-sensitivity")]
    gamma_sensitivity: bool,
}

#[derive(Args)]
struct ForceArgs {
    #[command(flatten)]
    common: PressureArgs,
    /// Sphere radius in μm.
    #[arg(long = "radius-um", value_name = "UM", allow_negative_numbers = true)]
    radius_um: Option<f64>,
}

#[derive(Args)]
struct DeltaArgs {
    /// Plate separation in nm.
    #[arg(long = "gap-nm", value_name = "NM", allow_negative_numbers = true)]
    gap_nm: Option<f64>,
    /// Starting temperature in K.
    #[arg(long = "t1-K", value_name = "K", allow_negative_numbers = true)]
    t1_k: Option<f64>,
    /// Final temperature in K (default 0.99 of the critical temperature).
    #[arg(long = "t2-K", value_name = "K", allow_negative_numbers = true)]
    t2_k: Option<f64>,
    /// Plate pair: nbnb | nbau (default nbnb).
    #[arg(long, value_name = "NAME")]
    setup: Option<String>,
    /// Zero-frequency TE extrapolation: drude | plasma (default drude).
    #[arg(long, value_name = "NAME")]
    prescription: Option<String>,
    /// parallel | sphere (default parallel).
    #[arg(long, value_name = "NAME")]
    geometry: Option<String>,
    /// Sphere radius in μm (sphere geometry only).
    #[arg(long = "radius-um", value_name = "UM", allow_negative_numbers = true)]
    radius_um: Option<f64>,
    /// closed | numeric (default closed).
    #[arg(long, value_name = "NAME")]
    method: Option<String>,
    /// Relative tolerance of the transverse integrals.
    #[arg(long, value_name = "REL", allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Report relaxation-energy sensitivity of the result.
    #[arg(long = "gamma-sensitivity")]
    gamma_sensitivity: bool,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure number, 1–4.
    id: u8,
    /// Output CSV path (default figureN.csv).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Run a single criterion by slug.
    #[arg(long, value_name = "SLUG")]
    only: Option<String>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = if error.use_stderr() { 2 } else { 0 };
            let _ = error.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let file = match &cli.config {
        None => FileConfig::default(),
        Some(path) => match config::load(path) {
            Ok(parsed) => parsed,
            Err(message) => return fail_config(&message),
        },
    };
    match cli.command {
        Command::Pressure(args) => cmd_pressure(args, &file),
        Command::Force(args) => cmd_force(args, &file),
        Command::Delta(args) => cmd_delta(args, &file),
        Command::Figure(args) => cmd_figure(args, &file),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn fail_config(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

fn fail_core(error: &CoreError) -> i32 {
    eprintln!("error: {error}");
    match error {
        CoreError::NonConvergence { .. } => 3,
        CoreError::CancellationRefused { .. } => 4,
        _ => 2,
    }
}

fn parse_prescription(name: &str) -> Result<ZeroModePrescription, String> {
    match name.to_lowercase().as_str() {
        "drude" => Ok(ZeroModePrescription::Drude),
        "plasma" => Ok(ZeroModePrescription::Plasma),
        other => Err(format!("unknown prescription {other:?} (drude | plasma)")),
    }
}

fn parse_setup(name: &str) -> Result<Setup, String> {
    match name.to_lowercase().as_str() {
        "nbnb" | "nb-nb" => Ok(Setup::NbNb),
        "nbau" | "nb-au" => Ok(Setup::NbAu),
        other => Err(format!("unknown setup {other:?} (nbnb | nbau)")),
    }
}

fn parse_method(name: &str) -> Result<Method, String> {
    match name.to_lowercase().as_str() {
        "closed" | "closed-form" => Ok(Method::ClosedForm),
        "numeric" | "numeric-difference" => Ok(Method::NumericDifference),
        other => Err(format!("unknown method {other:?} (closed | numeric)")),
    }
}

/// Resolved inputs shared by the pressure and force commands.
struct SingleRun {
    gap_nm: f64,
    temp_k: f64,
    plate1: MaterialModel,
    plate2: MaterialModel,
    prescription: ZeroModePrescription,
    tol: Option<f64>,
    gamma_sensitivity: bool,
}

fn resolve_single(args: &PressureArgs, file: &FileConfig) -> Result<SingleRun, String> {
    let gap_nm = file
        .fall(args.gap_nm, "gap_nm")?
        .ok_or("missing --gap-nm (or [run] gap_nm)")?;
    let temp_k = file.fall(args.temp_k, "temp_K")?.unwrap_or(300.0);
    let plate1_name = file
        .fall(args.plate1.clone(), "plate1")?
        .unwrap_or_else(|| "au".to_string());
    let plate2_name = file
        .fall(args.plate2.clone(), "plate2")?
        .unwrap_or_else(|| "au".to_string());
    let prescription_name = file
        .fall(args.prescription.clone(), "prescription")?
        .unwrap_or_else(|| "drude".to_string());
    Ok(SingleRun {
        gap_nm,
        temp_k,
        plate1: config::resolve_material(&plate1_name, file)?,
        plate2: config::resolve_material(&plate2_name, file)?,
        prescription: parse_prescription(&prescription_name)?,
        tol: file.fall(args.tol, "tol")?,
        gamma_sensitivity: args.gamma_sensitivity,
    })
}

fn cavity_for(run: &SingleRun, m1: MaterialModel, m2: MaterialModel) -> Result<CavityConfig, CoreError> {
    let mut cavity = CavityConfig::new(run.gap_nm, run.temp_k, m1, m2, run.prescription)?;
    if let Some(tol) = run.tol {
        cavity.quad_rel_tol = tol;
        cavity.validate()?;
    }
    Ok(cavity)
}

/// A copy of the material with its relaxation energy scaled; plasma-kind
/// materials carry no relaxation and are returned unchanged.
fn scale_gamma(material: &MaterialModel, factor: f64) -> MaterialModel {
    match material.kind {
        MaterialKind::Plasma => material.clone(),
        MaterialKind::Drude => MaterialModel::drude(material.omega_p, material.gamma * factor)
            .expect("scaled relaxation stays valid"),
        MaterialKind::Superconductor => MaterialModel::superconductor(
            material.omega_p,
            material.gamma * factor,
            material.t_c,
        )
        .expect("scaled relaxation stays valid"),
    }
}

fn print_prescription(prescription: ZeroModePrescription) -> &'static str {
    match prescription {
        ZeroModePrescription::Drude => "drude",
        ZeroModePrescription::Plasma => "plasma",
    }
}

fn cmd_pressure(args: PressureArgs, file: &FileConfig) -> i32 {
    let run = match resolve_single(&args, file) {
        Ok(run) => run,
        Err(message) => return fail_config(&message),
    };
    let cavity = match cavity_for(&run, run.plate1.clone(), run.plate2.clone()) {
        Ok(cavity) => cavity,
        Err(error) => return fail_core(&error),
    };
    let breakdown = match pressure(&cavity) {
        Ok(breakdown) => breakdown,
        Err(error) => return fail_core(&error),
    };
    println!("# command = pressure");
    println!("# gap_nm = {}", run.gap_nm);
    println!("# temp_K = {}", run.temp_k);
    println!("# plate1 = {}", describe_material(&run.plate1));
    println!("# plate2 = {}", describe_material(&run.plate2));
    println!("# prescription = {}", print_prescription(run.prescription));
    println!("# quad_rel_tol = {:e}", cavity.quad_rel_tol);
    println!("# sum_rel_tol = {:e}", cavity.sum_rel_tol);
    println!("p0_te_Pa = {}", sci(breakdown.p0_te));
    println!("p0_tm_Pa = {}", sci(breakdown.p0_tm));
    println!("p1_Pa = {}", sci(breakdown.p1));
    println!("total_Pa = {}", sci(breakdown.total));
    println!("l_used = {}", breakdown.l_used);
    println!("max_quad_error_Pa = {}", sci(breakdown.max_quad_error));
    if run.gamma_sensitivity {
        for (label, factor) in [("half", 0.5), ("double", 2.0)] {
            let scaled = cavity_for(
                &run,
                scale_gamma(&run.plate1, factor),
                scale_gamma(&run.plate2, factor),
            )
            .and_then(|cavity| pressure(&cavity));
            match scaled {
                Ok(alt) => println!("gamma_{label}_total_Pa = {}", sci(alt.total)),
                Err(error) => return fail_core(&error),
            }
        }
    }
    0
}

fn cmd_force(args: ForceArgs, file: &FileConfig) -> i32 {
    let run = match resolve_single(&args.common, file) {
        Ok(run) => run,
        Err(message) => return fail_config(&message),
    };
    let radius_um = match file
        .fall(args.radius_um, "radius_um")
        .and_then(|r| r.ok_or_else(|| "missing --radius-um (or [run] radius_um)".to_string()))
    {
        Ok(radius) => radius,
        Err(message) => return fail_config(&message),
    };
    let geometry = match SphereGeometry::new(radius_um, run.gap_nm) {
        Ok(geometry) => geometry,
        Err(error) => return fail_core(&error),
    };
    let cavity = match cavity_for(&run, run.plate1.clone(), run.plate2.clone()) {
        Ok(cavity) => cavity,
        Err(error) => return fail_core(&error),
    };
    let breakdown = match f_ps(&geometry, &cavity) {
        Ok(breakdown) => breakdown,
        Err(error) => return fail_core(&error),
    };
    println!("# command = force");
    println!("# gap_nm = {}", run.gap_nm);
    println!("# radius_um = {radius_um}");
    println!("# temp_K = {}", run.temp_k);
    println!("# plate1 = {}", describe_material(&run.plate1));
    println!("# plate2 = {}", describe_material(&run.plate2));
    println!("# prescription = {}", print_prescription(run.prescription));
    println!("# quad_rel_tol = {:e}", cavity.quad_rel_tol);
    println!("# sum_rel_tol = {:e}", cavity.sum_rel_tol);
    println!("f0_te_N = {}", sci(breakdown.f0_te));
    println!("f0_tm_N = {}", sci(breakdown.f0_tm));
    println!("f1_N = {}", sci(breakdown.f1));
    println!("total_N = {}", sci(breakdown.total));
    println!("l_used = {}", breakdown.l_used);
    println!("max_quad_error_N = {}", sci(breakdown.max_quad_error));
    if run.gamma_sensitivity {
        for (label, factor) in [("half", 0.5), ("double", 2.0)] {
            let scaled = cavity_for(
                &run,
                scale_gamma(&run.plate1, factor),
                scale_gamma(&run.plate2, factor),
            )
            .and_then(|cavity| f_ps(&geometry, &cavity));
            match scaled {
                Ok(alt) => println!("gamma_{label}_total_N = {}", sci(alt.total)),
                Err(error) => return fail_core(&error),
            }
        }
    }
    0
}

struct DeltaRun {
    request: DeltaRequest,
    setup: Setup,
    unit: &'static str,
    gamma_sensitivity: bool,
}

fn resolve_delta(args: &DeltaArgs, file: &FileConfig) -> Result<Result<DeltaRun, CoreError>, String> {
    let gap_nm: f64 = file
        .fall(args.gap_nm, "gap_nm")?
        .ok_or("missing --gap-nm (or [run] gap_nm)")?;
    let t1_k: f64 = file
        .fall(args.t1_k, "t1_K")?
        .ok_or("missing --t1-K (or [run] t1_K)")?;
    let t2_k: f64 = file.fall(args.t2_k, "t2_K")?.unwrap_or(DEFAULT_T2_K);
    let setup = parse_setup(
        &file
            .fall(args.setup.clone(), "setup")?
            .unwrap_or_else(|| "nbnb".to_string()),
    )?;
    let prescription = parse_prescription(
        &file
            .fall(args.prescription.clone(), "prescription")?
            .unwrap_or_else(|| "drude".to_string()),
    )?;
    let method = parse_method(
        &file
            .fall(args.method.clone(), "method")?
            .unwrap_or_else(|| "closed".to_string()),
    )?;
    let geometry_name = file
        .fall(args.geometry.clone(), "geometry")?
        .unwrap_or_else(|| "parallel".to_string());
    let (geometry, unit) = match geometry_name.to_lowercase().as_str() {
        "parallel" | "parallel-plates" | "plates" => (Geometry::ParallelPlates, "Pa"),
        "sphere" | "sphere-plate" => {
            let radius = file
                .fall(args.radius_um, "radius_um")?
                .ok_or("sphere geometry needs --radius-um (or [run] radius_um)")?;
            (Geometry::SpherePlate { radius }, "N")
        }
        other => return Err(format!("unknown geometry {other:?} (parallel | sphere)")),
    };
    let tol: Option<f64> = file.fall(args.tol, "tol")?;
    let core = (|| {
        let mut request =
            DeltaRequest::new(geometry, gap_nm, t1_k, t2_k, setup, prescription, method)?;
        if let Some(tol) = tol {
            let sum_rel_tol = request.sum_rel_tol;
            request = request.with_tolerances(tol, sum_rel_tol)?;
        }
        Ok(DeltaRun {
            request,
            setup,
            unit,
            gamma_sensitivity: args.gamma_sensitivity,
        })
    })();
    Ok(core)
}

fn evaluate_delta(request: &DeltaRequest) -> Result<DeltaResult, CoreError> {
    match request.geometry {
        Geometry::ParallelPlates => delta_pressure(request),
        Geometry::SpherePlate { .. } => delta_force_ps(request),
    }
}

fn cmd_delta(args: DeltaArgs, file: &FileConfig) -> i32 {
    let run = match resolve_delta(&args, file) {
        Ok(Ok(run)) => run,
        Ok(Err(error)) => return fail_core(&error),
        Err(message) => return fail_config(&message),
    };
    let result = match evaluate_delta(&run.request) {
        Ok(result) => result,
        Err(error) => return fail_core(&error),
    };
    let request = &run.request;
    println!("# command = delta");
    println!(
        "# geometry = {}",
        match request.geometry {
            Geometry::ParallelPlates => "parallel-plates".to_string(),
            Geometry::SpherePlate { radius } => format!("sphere-plate, radius_um = {radius}"),
        }
    );
    println!("# gap_nm = {}", request.gap);
    println!("# t1_K = {}", request.t1);
    println!("# t2_K = {}", request.t2);
    println!(
        "# setup = {}",
        match run.setup {
            Setup::NbNb => "nbnb",
            Setup::NbAu => "nbau",
        }
    );
    println!("# prescription = {}", print_prescription(request.prescription));
    println!(
        "# method = {}",
        match request.method {
            Method::ClosedForm => "closed",
            Method::NumericDifference => "numeric",
        }
    );
    println!("# quad_rel_tol = {:e}", request.quad_rel_tol);
    println!("# sum_rel_tol = {:e}", request.sum_rel_tol);
    let unit = run.unit;
    println!("value_{unit} = {}", sci(result.value));
    for (name, value) in &result.breakdown {
        println!("term_{name}_{unit} = {}", sci(*value));
    }
    println!("cancellation_flag = {}", result.cancellation_flag);
    if let Some(digits) = result.digits_lost {
        println!("digits_lost = {digits:.2}");
    }
    if run.gamma_sensitivity {
        println!(
            "# differentials are relaxation-independent: the zero modes and the \
             perturbative term are gamma-free, and numeric endpoints are evaluated \
             in the collisionless cryogenic limit"
        );
        println!("gamma_half_value_{unit} = {}", sci(result.value));
        println!("gamma_double_value_{unit} = {}", sci(result.value));
    }
    0
}

fn cmd_figure(args: FigureArgs, file: &FileConfig) -> i32 {
    let out: PathBuf = match file.fall(args.out, "out") {
        Ok(Some(path)) => path,
        Ok(None) => PathBuf::from(format!("figure{}.csv", args.id)),
        Err(message) => return fail_config(&message),
    };
    let report = match figures::run_figure(args.id) {
        Ok(report) => report,
        Err(error) => return fail_core(&error),
    };
    let columns = figures::columns(report.figure);
    let rows = figures::csv_rows(&report);
    if let Err(error) = output::write_csv(&out, &report.provenance, &columns, &rows) {
        eprintln!("error: cannot write {}: {error}", out.display());
        return 2;
    }
    eprintln!(
        "# figure {}: {} rows in {:.2} s -> {}",
        report.figure,
        report.rows.len(),
        report.timing,
        out.display()
    );
    0
}

fn cmd_validate(args: ValidateArgs) -> i32 {
    let reports = match validate::run_suite(args.only.as_deref()) {
        Ok(reports) => reports,
        Err(error) => return fail_core(&error),
    };
    let mut failures = 0usize;
    for report in &reports {
        println!("{}", validate::format_line(report));
        if !report.passed {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("{} criteria passed", reports.len());
        0
    } else {
        println!("{failures} of {} criteria failed", reports.len());
        1
    }
}
