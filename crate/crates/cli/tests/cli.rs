//! End-to-end checks of the binary: config parsing diagnostics, CSV output
//! contracts, determinism and the study file sets.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn microcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_microcurve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("run.cfg");
    fs::write(&path, body).unwrap();
    path
}

// Small grids keep the end-to-end runs quick.
const FAST: &str = "sweep.points = 40\nbuckling.samples = 256\n";

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn curve_reference_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), FAST);
    let out = microcurve(&[
        "curve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv_path = dir.path().join("curve.csv");
    let text = fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with("p_over_mu_m,delta_V,buckled_fraction\n"));
    let rows = read_csv(&csv_path);
    assert_eq!(rows.len(), 40);
    assert_eq!(rows[0], vec![0.0, 0.0, 0.0]);
    for pair in rows.windows(2) {
        assert!(pair[0][0] < pair[1][0]);
        assert!(pair[1][1] >= pair[0][1] - 1e-6);
        assert!(pair[1][2] >= pair[0][2] - 1e-9);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let config = write_config(dir_a.path(), FAST);
    for dir in [&dir_a, &dir_b] {
        let out = microcurve(&[
            "curve",
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read(dir_a.path().join("curve.csv")).unwrap();
    let b = fs::read(dir_b.path().join("curve.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn model_override_reduction() {
    // --model neo-hookean must agree with --model mooney-rivlin --gamma 0.5
    // in the delta_V column to 1e-12.
    let dir_nh = tempfile::tempdir().unwrap();
    let dir_mr = tempfile::tempdir().unwrap();
    let config = write_config(dir_nh.path(), FAST);
    let nh = microcurve(&[
        "curve",
        "--config",
        config.to_str().unwrap(),
        "--model",
        "neo-hookean",
        "--out",
        dir_nh.path().to_str().unwrap(),
    ]);
    assert!(nh.status.success());
    let mr = microcurve(&[
        "curve",
        "--config",
        config.to_str().unwrap(),
        "--model",
        "mooney-rivlin",
        "--gamma",
        "0.5",
        "--out",
        dir_mr.path().to_str().unwrap(),
    ]);
    assert!(mr.status.success());
    let rows_nh = read_csv(&dir_nh.path().join("curve.csv"));
    let rows_mr = read_csv(&dir_mr.path().join("curve.csv"));
    for (a, b) in rows_nh.iter().zip(&rows_mr) {
        assert_eq!(a[0], b[0]);
        assert!(
            (a[1] - b[1]).abs() <= 1e-12 * a[1].abs().max(1e-12),
            "{} vs {}",
            a[1],
            b[1]
        );
    }
}

#[test]
fn different_models_differ_only_in_delta_v() {
    let dir_nh = tempfile::tempdir().unwrap();
    let dir_mr = tempfile::tempdir().unwrap();
    let config = write_config(dir_nh.path(), FAST);
    for (model, dir) in [("neo-hookean", &dir_nh), ("mooney-rivlin", &dir_mr)] {
        let out = microcurve(&[
            "curve",
            "--config",
            config.to_str().unwrap(),
            "--model",
            model,
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let rows_nh = read_csv(&dir_nh.path().join("curve.csv"));
    let rows_mr = read_csv(&dir_mr.path().join("curve.csv"));
    let mut delta_differs = false;
    for (a, b) in rows_nh.iter().zip(&rows_mr) {
        assert_eq!(a[0], b[0], "pressure column must match");
        assert_eq!(a[2], b[2], "buckled fraction column must match");
        delta_differs |= a[1] != b[1];
    }
    assert!(delta_differs, "post-buckling models must differ somewhere");
}

#[test]
fn study_fig9_writes_distribution_families() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.points = 16\nbuckling.samples = 256\n");
    let out = microcurve(&[
        "study",
        "fig9",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for stem in [
        "xhat0_0p005",
        "xhat0_0p01",
        "xhat0_0p02",
        "k_8",
        "k_15",
        "k_30",
    ] {
        assert!(
            dir.path().join(format!("fig9_{stem}.csv")).exists(),
            "missing {stem}"
        );
    }
}

#[test]
fn invalid_volume_fraction_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "composite.phi = 1.5\n");
    let out = microcurve(&["curve", "--config", config.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("composite.phi"), "stderr: {stderr}");
}

#[test]
fn gamma_out_of_range_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "model.gamma = 0.7\n");
    let out = microcurve(&["curve", "--config", config.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("model.gamma") && stderr.contains(":1:"),
        "stderr: {stderr}"
    );
}

#[test]
fn unknown_key_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "# comment\nshell.mu_pa = 1.26e9\nmatrix.nu = 0.5\n",
    );
    let out = microcurve(&["curve", "--config", config.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("matrix.nu") && stderr.contains(":3:"),
        "stderr: {stderr}"
    );
}

#[test]
fn buckling_envelope_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "buckling.n_min = 13\nbuckling.n_max = 1000\nbuckling.samples = 128\n",
    );
    let out = microcurve(&[
        "buckling",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_csv(&dir.path().join("buckling.csv"));
    assert_eq!(rows.len(), 128);
    for pair in rows.windows(2) {
        assert!(pair[0][1] < pair[1][1], "critical ratio must increase");
        assert!(pair[0][2] < pair[1][2], "critical pressure must increase");
    }
    let max_ratio = rows.last().unwrap()[1];
    let max_pressure = rows.last().unwrap()[2];
    assert!(max_ratio <= 0.03 && max_pressure <= 3.0);
}

#[test]
fn reversed_mode_range_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "buckling.n_min = 1000\nbuckling.n_max = 13\n");
    let out = microcurve(&["buckling", "--config", config.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn study_fig8_writes_five_curves_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.points = 24\nbuckling.samples = 256\n");
    let out = microcurve(&[
        "study",
        "fig8",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for stem in [
        "reference",
        "phi_0p10",
        "polytropic",
        "soft_shell",
        "soft_matrix",
    ] {
        assert!(
            dir.path().join(format!("fig8_{stem}.csv")).exists(),
            "missing {stem}"
        );
    }
    let script = fs::read_to_string(dir.path().join("plot_fig8.gp")).unwrap();
    assert!(script.contains("fig8_reference.csv"));
    assert!(script.contains("plot "));

    // Ordering per the parameter study: higher volume fraction is softer.
    let reference = read_csv(&dir.path().join("fig8_reference.csv"));
    let higher_phi = read_csv(&dir.path().join("fig8_phi_0p10.csv"));
    let last = reference.len() - 1;
    assert!(higher_phi[last][1] > reference[last][1]);
}

#[test]
fn study_fig10_includes_delta_limit() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.points = 24\nbuckling.samples = 256\n");
    let out = microcurve(&[
        "study",
        "fig10",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for stem in ["k_8", "k_50", "delta_limit"] {
        assert!(dir.path().join(format!("fig10_{stem}.csv")).exists());
    }
    let delta = read_csv(&dir.path().join("fig10_delta_limit.csv"));
    // Monodisperse limit: the buckled fraction is a step function.
    assert!(delta.iter().all(|row| row[2] == 0.0 || row[2] == 1.0));
}

#[test]
fn study_fig7_extends_to_the_asymptote() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "sweep.points = 16\nsweep.extend_points = 12\nbuckling.samples = 256\n",
    );
    let out = microcurve(&[
        "study",
        "fig7",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let nh = read_csv(&dir.path().join("fig7_neo_hookean.csv"));
    let last = nh.last().unwrap();
    assert!(
        (last[0] - 25.0).abs() < 1e-9,
        "grid must extend to p/mu = 25"
    );
    // The incompressible models approach the 5% volume fraction from below;
    // the linear reference overshoots it badly.
    assert!((0.045..=0.05).contains(&last[1]), "dV(25) = {}", last[1]);
    let linear = read_csv(&dir.path().join("fig7_linear.csv"));
    assert!(linear.last().unwrap()[1] > 0.2);
}

#[test]
fn unknown_study_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let out = microcurve(&["study", "fig99", "--config", config.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig99"));
}

#[test]
fn emitted_csv_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), FAST);
    let out = microcurve(&[
        "curve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = read_csv(&dir.path().join("curve.csv"));
    assert!(rows
        .iter()
        .all(|row| row.len() == 3 && row.iter().all(|v| v.is_finite())));
}

#[test]
fn missing_config_file_fails() {
    let out = microcurve(&["curve", "--config", "/nonexistent/path.cfg"]);
    assert!(!out.status.success());
}
