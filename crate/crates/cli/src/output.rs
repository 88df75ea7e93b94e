//! CSV and plot-script emission. All numbers are written in scientific
//! notation with 12 significant digits so repeated runs are byte-identical
//! and reproducibility diffs are meaningful.

use anyhow::{Context, Result};
use microcurve_core::{BucklingTable, LoadCurve};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub fn format_number(value: f64) -> String {
    format!("{value:.11e}")
}

pub fn render_curve_csv(curve: &LoadCurve) -> String {
    let mut out = String::from("p_over_mu_m,delta_V,buckled_fraction\n");
    for point in curve.points() {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_number(point.pressure_ratio),
            format_number(point.volume_change),
            format_number(point.buckled_fraction)
        );
    }
    out
}

pub fn render_buckling_csv(table: &BucklingTable) -> String {
    let mu = table.matrix_material().shear_modulus();
    let mut out = String::from("n,Xhat_c,pc_over_mu_m\n");
    for sample in table.samples() {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_number(sample.mode),
            format_number(sample.critical_ratio),
            format_number(sample.critical_pressure / mu)
        );
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating output directory {}", parent.display()))?;
        }
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Gnuplot script plotting the listed CSV curves on common axes.
pub fn render_plot_script(title: &str, ylabel: &str, curves: &[(String, String)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# gnuplot script; run with: gnuplot -p {title}.gp");
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set key left top");
    let _ = writeln!(out, "set xlabel 'p / mu_m'");
    let _ = writeln!(out, "set ylabel '{ylabel}'");
    let _ = writeln!(out, "set title '{title}'");
    out.push_str("plot ");
    for (i, (file, label)) in curves.iter().enumerate() {
        if i > 0 {
            out.push_str(", \\\n     ");
        }
        let _ = write!(out, "'{file}' using 1:2 skip 1 with lines title '{label}'");
    }
    out.push('\n');
    out
}
