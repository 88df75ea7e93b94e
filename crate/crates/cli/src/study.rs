//! Named parameter studies, each a family of load curves around the
//! reference composite plus a plot script.

use crate::config::{ModelKind, RunConfig};
use anyhow::{bail, Result};
use microcurve_core::{presets, GasLaw};

/// How one study curve is averaged over shell ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Average over the configured Gamma distribution.
    Distribution,
    /// Monodisperse limit: every shell at the given ratio.
    SingleRatio(f64),
}

#[derive(Debug, Clone)]
pub struct StudyCurve {
    pub file_stem: String,
    pub label: String,
    pub config: RunConfig,
    pub kind: CurveKind,
}

pub const STUDY_NAMES: &[&str] = &["fig6", "fig7", "fig8", "fig9", "fig10"];

/// Curves of the named study, derived from `base` (typically the reference
/// configuration) by varying one aspect per curve.
pub fn study_curves(name: &str, base: &RunConfig) -> Result<Vec<StudyCurve>> {
    match name {
        "fig6" => Ok(model_family(name, base)),
        "fig7" => {
            let mut extended = base.clone();
            extended.extend_to_ratio = Some(extended.extend_to_ratio.unwrap_or(25.0));
            Ok(model_family(name, &extended))
        }
        "fig8" => Ok(parameter_family(name, base)),
        "fig9" => Ok(distribution_family(name, base)),
        "fig10" => Ok(delta_family(name, base)),
        other => bail!(
            "unknown study `{other}`; expected one of {}",
            STUDY_NAMES.join(", ")
        ),
    }
}

fn curve(name: &str, stem: &str, label: &str, config: RunConfig) -> StudyCurve {
    StudyCurve {
        file_stem: format!("{name}_{stem}"),
        label: label.to_string(),
        config,
        kind: CurveKind::Distribution,
    }
}

// Constitutive-model comparison on otherwise identical parameters.
fn model_family(name: &str, base: &RunConfig) -> Vec<StudyCurve> {
    let with_model = |kind: ModelKind| {
        let mut c = base.clone();
        c.model_kind = kind;
        c
    };
    vec![
        curve(
            name,
            "neo_hookean",
            "neo-Hookean",
            with_model(ModelKind::NeoHookean),
        ),
        curve(
            name,
            "mooney_rivlin",
            "Mooney-Rivlin",
            with_model(ModelKind::MooneyRivlin),
        ),
        curve(
            name,
            "horgan_murphy",
            "Horgan-Murphy",
            with_model(ModelKind::HorganMurphy),
        ),
        curve(
            name,
            "linear",
            "linear elastic",
            with_model(ModelKind::LinearElastic),
        ),
    ]
}

// One-parameter-at-a-time sensitivity family around the reference.
fn parameter_family(name: &str, base: &RunConfig) -> Vec<StudyCurve> {
    let mut higher_phi = base.clone();
    higher_phi.volume_fraction = 0.1;

    let mut polytropic = base.clone();
    polytropic.gas_law = GasLaw::polytropic_air();

    let mut soft_shell = base.clone();
    soft_shell.shell = presets::soft_shell();

    let mut soft_matrix = base.clone();
    soft_matrix.matrix = presets::compressible_rubber_matrix();

    vec![
        curve(name, "reference", "reference", base.clone()),
        curve(name, "phi_0p10", "volume fraction 0.10", higher_phi),
        curve(name, "polytropic", "polytropic gas", polytropic),
        curve(name, "soft_shell", "softer shell", soft_shell),
        curve(name, "soft_matrix", "softer matrix", soft_matrix),
    ]
}

// Distribution sensitivity: vary the mean ratio at fixed shape, then the
// shape at fixed mean.
fn distribution_family(name: &str, base: &RunConfig) -> Vec<StudyCurve> {
    let mut curves = Vec::new();
    for mean in [0.005, 0.01, 0.02] {
        let mut c = base.clone();
        c.distribution_mean = mean;
        let stem = format!("xhat0_{}", format_suffix(mean));
        curves.push(curve(name, &stem, &format!("mean ratio {mean}"), c));
    }
    for shape in [8.0, 15.0, 30.0] {
        let mut c = base.clone();
        c.distribution_shape = shape;
        let stem = format!("k_{}", shape as u64);
        curves.push(curve(name, &stem, &format!("shape k = {shape}"), c));
    }
    curves
}

// Approach to the monodisperse (delta-distribution) limit.
fn delta_family(name: &str, base: &RunConfig) -> Vec<StudyCurve> {
    let mut curves = Vec::new();
    for shape in [8.0, 50.0] {
        let mut c = base.clone();
        c.distribution_shape = shape;
        curves.push(curve(
            name,
            &format!("k_{}", shape as u64),
            &format!("k = {shape}"),
            c,
        ));
    }
    curves.push(StudyCurve {
        file_stem: format!("{name}_delta_limit"),
        label: "single ratio".to_string(),
        config: base.clone(),
        kind: CurveKind::SingleRatio(base.distribution_mean),
    });
    curves
}

fn format_suffix(value: f64) -> String {
    format!("{value}").replace('.', "p")
}
