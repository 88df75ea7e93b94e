// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `microcurve`: predicts the hydrostatic pressure vs relative-volume-change
//! loading curve of an elastomer filled with gas-filled microspheres.

mod config;
mod output;
mod study;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use config::{parse_config, ModelKind, RunConfig};
use microcurve_core::{
    build_buckling_table, BucklingTable, CompositeCurve, LoadCurve, SweepOptions,
};
use std::path::PathBuf;
use study::CurveKind;

#[derive(Parser)]
#[command(name = "microcurve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file (`key = value` lines; missing keys use the
    /// reference parameter set).
    #[arg(long)]
    config: PathBuf,
    /// Override the matrix model: linear-elastic, neo-hookean,
    /// mooney-rivlin or horgan-murphy.
    #[arg(long)]
    model: Option<String>,
    /// Override the Mooney-Rivlin mixing parameter.
    #[arg(long)]
    gamma: Option<f64>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the pressure grid and write the load curve as CSV.
    Curve(CommonArgs),
    /// Write the buckling envelope (mode, critical ratio, critical
    /// pressure) as CSV.
    Buckling(CommonArgs),
    /// Run a named parameter study: fig6, fig7, fig8, fig9 or fig10.
    Study {
        /// Study name.
        name: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() {
    env_logger::init();
    configure_threads();
    if let Err(error) = run() {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("MICROCURVE_THREADS") {
        if let Ok(threads) = value.trim().parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Curve(common) => {
            let config = load_config(&common)?;
            run_curve(&config)
        }
        Command::Buckling(common) => {
            let config = load_config(&common)?;
            run_buckling(&config)
        }
        Command::Study { name, common } => {
            let config = load_config(&common)?;
            run_study(&name, &config)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut config = parse_config(&common.config)?;
    if let Some(model) = &common.model {
        config.model_kind = ModelKind::parse(model)
            .with_context(|| format!("unknown model `{model}` passed via --model"))?;
    }
    if let Some(gamma) = common.gamma {
        anyhow::ensure!(
            (-0.5..=0.5).contains(&gamma),
            "--gamma must lie in [-1/2, 1/2], got {gamma}"
        );
        config.gamma = gamma;
    }
    if let Some(out) = &common.out {
        config.output_dir = out.clone();
    }
    // Re-validate after overrides.
    config.composite_spec()?;
    Ok(config)
}

fn build_table(config: &RunConfig) -> Result<BucklingTable> {
    build_buckling_table(
        &config.shell,
        &config.matrix,
        config.mode_min,
        config.mode_max,
        config.mode_samples,
    )
    .context("building the buckling table")
}

fn sweep_options(config: &RunConfig) -> SweepOptions {
    SweepOptions {
        correction_pressure: config.correction_pressure,
        ..SweepOptions::default()
    }
}

fn compute_curve(config: &RunConfig, kind: CurveKind) -> Result<LoadCurve> {
    let spec = config.composite_spec()?;
    let table = build_table(config)?;
    let evaluator = CompositeCurve::with_options(&spec, &table, sweep_options(config));
    let grid = config.pressure_grid();
    let curve = match kind {
        CurveKind::Distribution => evaluator.sweep(&grid)?,
        CurveKind::SingleRatio(ratio) => evaluator.single_ratio_sweep(&grid, ratio)?,
    };
    Ok(curve)
}

fn run_curve(config: &RunConfig) -> Result<()> {
    let curve = compute_curve(config, CurveKind::Distribution)?;
    let path = config.output_dir.join("curve.csv");
    output::write_file(&path, &output::render_curve_csv(&curve))
}

fn run_buckling(config: &RunConfig) -> Result<()> {
    let table = build_table(config)?;
    let path = config.output_dir.join("buckling.csv");
    output::write_file(&path, &output::render_buckling_csv(&table))
}

fn run_study(name: &str, config: &RunConfig) -> Result<()> {
    let curves = study::study_curves(name, config)?;
    let mut plotted = Vec::new();
    for entry in &curves {
        let curve = compute_curve(&entry.config, entry.kind)
            .with_context(|| format!("computing study curve `{}`", entry.file_stem))?;
        let file_name = format!("{}.csv", entry.file_stem);
        let path = config.output_dir.join(&file_name);
        output::write_file(&path, &output::render_curve_csv(&curve))?;
        plotted.push((file_name, entry.label.clone()));
    }
    let script = output::render_plot_script(name, "relative volume change", &plotted);
    let script_path = config.output_dir.join(format!("plot_{name}.gp"));
    output::write_file(&script_path, &script)
}
