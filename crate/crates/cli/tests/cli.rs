//! End-to-end tests that spawn the `casimir` binary and check the printed
//! output and exit codes against the library and the documented contract.

use std::io::Write as _;
use std::process::{Command, Output};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["pressure", "--help"][..], &["--version"][..]] {
        let out = casimir(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = casimir(&["pressure", "--gap-mn", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_gap_is_rejected() {
    let out = casimir(&["pressure", "--gap-nm", "-5", "--temp-K", "300"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("gap must be >= 10 nm"), "{}", stderr_of(&out));
}

#[test]
fn unknown_material_is_rejected_with_known_list() {
    let out = casimir(&["pressure", "--gap-nm", "100", "--plate1", "unobtainium"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("unobtainium"), "{err}");
    assert!(err.contains("nb") && err.contains("au") && err.contains("ideal"), "{err}");
}

#[test]
fn plasma_numeric_difference_is_refused() {
    let out = casimir(&[
        "delta",
        "--prescription",
        "plasma",
        "--method",
        "numeric",
        "--gap-nm",
        "100",
        "--t1-K",
        "5",
        "--t2-K",
        "9.2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr_of(&out);
    assert!(err.contains("cancellation refusal"), "{err}");
    assert!(err.contains("closed-form"), "{err}");
}

#[test]
fn equal_temperatures_give_exactly_zero() {
    let out = casimir(&["delta", "--t1-K", "5", "--t2-K", "5", "--gap-nm", "150"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("value_Pa = 0.00000000000e0"), "{text}");
    assert!(text.contains("cancellation_flag = false"), "{text}");
}

#[test]
fn printed_pressure_matches_the_library() {
    use casimir_cli::output::sci;
    use casimir_core::lifshitz::{pressure, CavityConfig};
    use casimir_core::materials::{MaterialModel, ZeroModePrescription};

    let config = CavityConfig::new(
        1000.0,
        300.0,
        MaterialModel::preset("ideal").unwrap(),
        MaterialModel::preset("ideal").unwrap(),
        ZeroModePrescription::Drude,
    )
    .unwrap();
    let reference = pressure(&config).unwrap();

    let out = casimir(&[
        "pressure",
        "--gap-nm",
        "1000",
        "--temp-K",
        "300",
        "--plate1",
        "ideal",
        "--plate2",
        "ideal",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    for (label, value) in [
        ("p0_te_Pa", reference.p0_te),
        ("p0_tm_Pa", reference.p0_tm),
        ("p1_Pa", reference.p1),
        ("total_Pa", reference.total),
    ] {
        let line = format!("{label} = {}", sci(value));
        assert!(text.contains(&line), "missing {line:?} in:\n{text}");
    }
    assert!(text.contains(&format!("l_used = {}", reference.l_used)), "{text}");
    // The long-separation TM zero mode alone: k_B T ζ(3) / (8 π a³).
    assert!(text.contains("p0_tm_Pa = 1.98102385191e-4"), "{text}");
}

#[test]
fn figure_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for path in [&first, &second] {
        let out = casimir(&["figure", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
        assert!(stdout_of(&out).is_empty(), "data goes to the file, not stdout");
    }
    let bytes_first = std::fs::read(&first).unwrap();
    let bytes_second = std::fs::read(&second).unwrap();
    assert_eq!(bytes_first, bytes_second, "repeated runs must be byte-identical");

    let text = String::from_utf8(bytes_first).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# casimir figure 1");
    let column_row = text
        .lines()
        .find(|line| !line.starts_with('#'))
        .expect("a column-name row");
    assert!(column_row.starts_with("T1_K,"), "{column_row}");
    let data_rows = text
        .lines()
        .filter(|line| !line.starts_with('#') && !line.starts_with("T1_K"))
        .count();
    assert_eq!(data_rows, 81);
}

#[test]
fn figure_rejects_unknown_id_and_unwritable_path() {
    let out = casimir(&["figure", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = casimir(&["figure", "1", "--out", "/nonexistent-dir/fig.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_runs_a_single_criterion() {
    let out = casimir(&["validate", "--only", "zeta-tm"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("PASS zeta-tm"), "{text}");
    assert!(text.contains("1 criteria passed"), "{text}");
    let out = casimir(&["validate", "--only", "no-such-criterion"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.ini");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(
        file,
        "[run]\n\
         gap_nm = 150\n\
         temp_K = 300\n\
         plate1 = mymetal\n\
         plate2 = au\n\
         \n\
         [material.mymetal]\n\
         kind = drude\n\
         omega_p_eV = 9.3\n\
         gamma_eV = 0.04\n"
    )
    .unwrap();
    drop(file);
    let config = path.to_str().unwrap();

    let out = casimir(&["pressure", "--config", config]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("# gap_nm = 150"), "{text}");
    assert!(
        text.contains("# plate1 = drude(omega_p_eV = 9.3, gamma_eV = 0.04)"),
        "{text}"
    );

    // A command-line flag beats the file.
    let out = casimir(&["pressure", "--config", config, "--gap-nm", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("# gap_nm = 200"));

    // Without the file, the gap has no default at all.
    let out = casimir(&["pressure"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("missing --gap-nm"), "{}", stderr_of(&out));
}

#[test]
fn malformed_config_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ini");
    std::fs::write(&path, "[run]\ngap_nm = fast\n").unwrap();
    let out = casimir(&["pressure", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = casimir(&["pressure", "--config", "/no/such/file.ini", "--gap-nm", "100"]);
    assert_eq!(out.status.code(), Some(2));
}
