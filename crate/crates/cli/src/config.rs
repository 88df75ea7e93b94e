//! Run configuration: flat `key = value` text with dotted section prefixes.
//!
//! Every key is optional; omitted keys fall back to the reference parameter
//! set (5% stiff shells in rubber, Gamma(8, 0.01) ratios, Mooney-Rivlin
//! gamma = 1/18, constant gas pressure). Unknown keys are rejected with the
//! offending line.

use microcurve_core::material::{ATMOSPHERIC_PRESSURE, DIATOMIC_HEAT_CAPACITY_RATIO};
use microcurve_core::postbuckle::CorrectionPressure;
use microcurve_core::{
    presets, CompositeSpec, ElasticMaterial, Error as CoreError, GammaDistribution, GasLaw,
    MatrixModel,
};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected `key = value`, found `{text}`")]
    Syntax {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("{path}:{line}: unknown key `{key}`")]
    UnknownKey {
        path: PathBuf,
        line: usize,
        key: String,
    },
    #[error("{path}:{line}: duplicate key `{key}`")]
    DuplicateKey {
        path: PathBuf,
        line: usize,
        key: String,
    },
    #[error("{path}:{line}: invalid value for `{key}`: {message}")]
    InvalidValue {
        path: PathBuf,
        line: usize,
        key: String,
        message: String,
    },
    #[error("missing required key `{key}`: {message}")]
    MissingKey { key: String, message: String },
}

/// Model selector as written in config files and `--model`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    LinearElastic,
    NeoHookean,
    MooneyRivlin,
    HorganMurphy,
}

impl ModelKind {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "linear-elastic" => Some(Self::LinearElastic),
            "neo-hookean" => Some(Self::NeoHookean),
            "mooney-rivlin" => Some(Self::MooneyRivlin),
            "horgan-murphy" => Some(Self::HorganMurphy),
            _ => None,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::LinearElastic => "linear-elastic",
            Self::NeoHookean => "neo-hookean",
            Self::MooneyRivlin => "mooney-rivlin",
            Self::HorganMurphy => "horgan-murphy",
        };
        f.write_str(name)
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub shell: ElasticMaterial,
    pub matrix: ElasticMaterial,
    pub volume_fraction: f64,
    pub distribution_shape: f64,
    pub distribution_mean: f64,
    pub model_kind: ModelKind,
    pub gamma: f64,
    pub epsilon: Option<f64>,
    pub gas_law: GasLaw,
    pub mode_min: f64,
    pub mode_max: f64,
    pub mode_samples: usize,
    pub max_pressure_ratio: f64,
    pub pressure_points: usize,
    pub extend_to_ratio: Option<f64>,
    pub extend_points: usize,
    pub correction_pressure: CorrectionPressure,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            shell: presets::stiff_shell(),
            matrix: presets::rubber_matrix(),
            volume_fraction: 0.05,
            distribution_shape: 8.0,
            distribution_mean: 0.01,
            model_kind: ModelKind::MooneyRivlin,
            gamma: presets::REFERENCE_GAMMA,
            epsilon: None,
            gas_law: GasLaw::ConstantAtmospheric,
            mode_min: 2.0,
            mode_max: 1.0e4,
            mode_samples: 1024,
            max_pressure_ratio: 0.8,
            pressure_points: 200,
            extend_to_ratio: None,
            extend_points: 120,
            correction_pressure: CorrectionPressure::FarField,
            output_dir: PathBuf::from("."),
        }
    }
}

impl RunConfig {
    /// Matrix model with the configured selector, `gamma`, and (for the
    /// slightly compressible model) `epsilon`, defaulting to `mu_m/kappa_m`.
    pub fn matrix_model(&self) -> MatrixModel {
        match self.model_kind {
            ModelKind::LinearElastic => MatrixModel::LinearElastic,
            ModelKind::NeoHookean => MatrixModel::NeoHookean,
            ModelKind::MooneyRivlin => MatrixModel::MooneyRivlin { gamma: self.gamma },
            ModelKind::HorganMurphy => MatrixModel::HorganMurphy {
                gamma: self.gamma,
                epsilon: self
                    .epsilon
                    .unwrap_or(self.matrix.shear_modulus() / self.matrix.bulk_modulus()),
            },
        }
    }

    pub fn composite_spec(&self) -> Result<CompositeSpec, CoreError> {
        CompositeSpec::new(
            self.volume_fraction,
            self.shell,
            self.matrix,
            self.matrix_model(),
            self.gas_law,
            GammaDistribution::new(self.distribution_shape, self.distribution_mean)?,
        )
    }

    /// Pressure grid in Pa implied by the sweep settings.
    pub fn pressure_grid(&self) -> Vec<f64> {
        microcurve_core::pressure_grid(
            self.matrix.shear_modulus(),
            self.max_pressure_ratio,
            self.pressure_points,
            self.extend_to_ratio.map(|r| (r, self.extend_points)),
        )
    }
}

const KNOWN_KEYS: &[&str] = &[
    "shell.mu_pa",
    "shell.kappa_pa",
    "matrix.mu_pa",
    "matrix.kappa_pa",
    "composite.phi",
    "distribution.k",
    "distribution.xhat0",
    "model.kind",
    "model.gamma",
    "model.epsilon",
    "gas.kind",
    "gas.eta",
    "gas.p_atm_pa",
    "buckling.n_min",
    "buckling.n_max",
    "buckling.samples",
    "sweep.max_pressure_ratio",
    "sweep.points",
    "sweep.extend_to_ratio",
    "sweep.extend_points",
    "correction.pressure",
    "output.dir",
];

/// Parses and validates a configuration file, applying reference defaults
/// for every omitted key.
pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;

    let mut entries: BTreeMap<String, (String, usize)> = BTreeMap::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                path: path.to_path_buf(),
                line: line_no,
                text: line.to_string(),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey {
                path: path.to_path_buf(),
                line: line_no,
                key,
            });
        }
        if value.is_empty() {
            return Err(ConfigError::MissingKey {
                key,
                message: "no value given".into(),
            });
        }
        if entries.insert(key.clone(), (value, line_no)).is_some() {
            return Err(ConfigError::DuplicateKey {
                path: path.to_path_buf(),
                line: line_no,
                key,
            });
        }
    }

    build_config(path, &entries)
}

fn build_config(
    path: &Path,
    entries: &BTreeMap<String, (String, usize)>,
) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::default();

    let invalid = |key: &str, line: usize, message: String| ConfigError::InvalidValue {
        path: path.to_path_buf(),
        line,
        key: key.to_string(),
        message,
    };

    let number = |key: &str| -> Result<Option<(f64, usize)>, ConfigError> {
        match entries.get(key) {
            None => Ok(None),
            Some((text, line)) => text
                .parse::<f64>()
                .map(|v| Some((v, *line)))
                .map_err(|e| invalid(key, *line, e.to_string())),
        }
    };

    // Materials: paired overrides with validation through the constructors.
    let shell_mu = number("shell.mu_pa")?;
    let shell_kappa = number("shell.kappa_pa")?;
    if shell_mu.is_some() || shell_kappa.is_some() {
        let mu = shell_mu.map_or(config.shell.shear_modulus(), |v| v.0);
        let kappa = shell_kappa.map_or(config.shell.bulk_modulus(), |v| v.0);
        let line = shell_mu.or(shell_kappa).map_or(0, |v| v.1);
        config.shell = ElasticMaterial::new(kappa, mu)
            .map_err(|e| invalid("shell.mu_pa", line, e.to_string()))?;
    }
    let matrix_mu = number("matrix.mu_pa")?;
    let matrix_kappa = number("matrix.kappa_pa")?;
    if matrix_mu.is_some() || matrix_kappa.is_some() {
        let mu = matrix_mu.map_or(config.matrix.shear_modulus(), |v| v.0);
        let kappa = matrix_kappa.map_or(config.matrix.bulk_modulus(), |v| v.0);
        let line = matrix_mu.or(matrix_kappa).map_or(0, |v| v.1);
        config.matrix = ElasticMaterial::new(kappa, mu)
            .map_err(|e| invalid("matrix.mu_pa", line, e.to_string()))?;
    }

    if let Some((phi, line)) = number("composite.phi")? {
        if !(phi > 0.0 && phi < 1.0) {
            return Err(invalid(
                "composite.phi",
                line,
                format!("volume fraction must lie in (0, 1), got {phi}"),
            ));
        }
        config.volume_fraction = phi;
    }

    if let Some((k, line)) = number("distribution.k")? {
        GammaDistribution::new(k, config.distribution_mean)
            .map_err(|e| invalid("distribution.k", line, e.to_string()))?;
        config.distribution_shape = k;
    }
    if let Some((mean, line)) = number("distribution.xhat0")? {
        GammaDistribution::new(config.distribution_shape, mean)
            .map_err(|e| invalid("distribution.xhat0", line, e.to_string()))?;
        config.distribution_mean = mean;
    }

    if let Some((text, line)) = entries.get("model.kind") {
        config.model_kind = ModelKind::parse(text).ok_or_else(|| {
            invalid(
                "model.kind",
                *line,
                format!(
                    "unknown model `{text}`; expected linear-elastic, neo-hookean, \
                     mooney-rivlin or horgan-murphy"
                ),
            )
        })?;
    }
    if let Some((gamma, line)) = number("model.gamma")? {
        if !(-0.5..=0.5).contains(&gamma) {
            return Err(invalid(
                "model.gamma",
                line,
                format!("gamma must lie in [-1/2, 1/2], got {gamma}"),
            ));
        }
        config.gamma = gamma;
    }
    if let Some((epsilon, line)) = number("model.epsilon")? {
        if !(epsilon > 0.0 && epsilon <= 0.1) {
            return Err(invalid(
                "model.epsilon",
                line,
                format!("epsilon must lie in (0, 0.1], got {epsilon}"),
            ));
        }
        config.epsilon = Some(epsilon);
    }

    let mut eta = DIATOMIC_HEAT_CAPACITY_RATIO;
    let mut p_atm = ATMOSPHERIC_PRESSURE;
    if let Some((v, line)) = number("gas.eta")? {
        if !(v > 0.0) {
            return Err(invalid(
                "gas.eta",
                line,
                format!("eta must be positive, got {v}"),
            ));
        }
        eta = v;
    }
    if let Some((v, line)) = number("gas.p_atm_pa")? {
        if !(v > 0.0) {
            return Err(invalid(
                "gas.p_atm_pa",
                line,
                format!("atmospheric pressure must be positive, got {v}"),
            ));
        }
        p_atm = v;
    }
    if let Some((text, line)) = entries.get("gas.kind") {
        config.gas_law = match text.as_str() {
            "constant" => GasLaw::ConstantAtmospheric,
            "polytropic" => GasLaw::Polytropic {
                heat_capacity_ratio: eta,
                atmospheric_pressure: p_atm,
            },
            other => {
                return Err(invalid(
                    "gas.kind",
                    *line,
                    format!("unknown gas law `{other}`; expected constant or polytropic"),
                ))
            }
        };
    }

    if let Some((v, line)) = number("buckling.n_min")? {
        if !(v > 1.0) {
            return Err(invalid(
                "buckling.n_min",
                line,
                format!("mode numbers must exceed 1, got {v}"),
            ));
        }
        config.mode_min = v;
    }
    if let Some((v, _)) = number("buckling.n_max")? {
        config.mode_max = v;
    }
    if let Some((v, line)) = number("buckling.samples")? {
        if v < 16.0 || v.fract() != 0.0 {
            return Err(invalid(
                "buckling.samples",
                line,
                format!("sample count must be an integer of at least 16, got {v}"),
            ));
        }
        config.mode_samples = v as usize;
    }

    if let Some((v, line)) = number("sweep.max_pressure_ratio")? {
        if !(v > 0.0) {
            return Err(invalid(
                "sweep.max_pressure_ratio",
                line,
                format!("sweep extent must be positive, got {v}"),
            ));
        }
        config.max_pressure_ratio = v;
    }
    if let Some((v, line)) = number("sweep.points")? {
        if v < 2.0 || v.fract() != 0.0 {
            return Err(invalid(
                "sweep.points",
                line,
                format!("grid needs an integer count of at least 2, got {v}"),
            ));
        }
        config.pressure_points = v as usize;
    }
    if let Some((v, line)) = number("sweep.extend_to_ratio")? {
        if v <= config.max_pressure_ratio {
            return Err(invalid(
                "sweep.extend_to_ratio",
                line,
                format!(
                    "extension {v} must exceed sweep.max_pressure_ratio {}",
                    config.max_pressure_ratio
                ),
            ));
        }
        config.extend_to_ratio = Some(v);
    }
    if let Some((v, line)) = number("sweep.extend_points")? {
        if v < 1.0 || v.fract() != 0.0 {
            return Err(invalid(
                "sweep.extend_points",
                line,
                format!("extension needs a positive integer count, got {v}"),
            ));
        }
        config.extend_points = v as usize;
    }

    if let Some((text, line)) = entries.get("correction.pressure") {
        config.correction_pressure = match text.as_str() {
            "far-field" => CorrectionPressure::FarField,
            "net" => CorrectionPressure::NetOfInner,
            other => {
                return Err(invalid(
                    "correction.pressure",
                    *line,
                    format!("unknown choice `{other}`; expected far-field or net"),
                ))
            }
        };
    }

    if let Some((text, _)) = entries.get("output.dir") {
        config.output_dir = PathBuf::from(text);
    }

    if !(config.mode_min < config.mode_max) {
        let line = entries.get("buckling.n_max").map_or(0, |v| v.1);
        return Err(invalid(
            "buckling.n_max",
            line,
            format!(
                "mode range [{}, {}] must be increasing",
                config.mode_min, config.mode_max
            ),
        ));
    }

    // Final pass through the core validators so cross-field invariants
    // (gamma bounds, epsilon limit, distribution parameters) all fire.
    config
        .composite_spec()
        .map_err(|e| ConfigError::MissingKey {
            key: "composite".into(),
            message: e.to_string(),
        })?;

    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn parse(body: &str) -> Result<RunConfig, ConfigError> {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(body.as_bytes()).unwrap();
        parse_config(file.path())
    }

    #[test]
    fn empty_config_gives_reference_defaults() {
        let config = parse("").unwrap();
        assert_eq!(config.volume_fraction, 0.05);
        assert_eq!(config.distribution_shape, 8.0);
        assert_eq!(config.distribution_mean, 0.01);
        assert_eq!(config.model_kind, ModelKind::MooneyRivlin);
        assert_eq!(config.gamma, presets::REFERENCE_GAMMA);
        assert_eq!(config.gas_law, GasLaw::ConstantAtmospheric);
        assert_eq!(config.pressure_points, 200);
        assert_eq!(config.max_pressure_ratio, 0.8);
        let grid = config.pressure_grid();
        assert_eq!(grid.len(), 200);
        assert_eq!(grid[0], 0.0);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let config = parse("# a comment\n\ncomposite.phi = 0.1 # trailing comment\n").unwrap();
        assert_eq!(config.volume_fraction, 0.1);
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse("composite.phi\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 1, .. }), "{err}");
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = parse("composite.phi = 0.1\ncomposite.phi = 0.2\n").unwrap_err();
        assert!(
            matches!(err, ConfigError::DuplicateKey { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn model_kinds_parse() {
        for (name, kind) in [
            ("linear-elastic", ModelKind::LinearElastic),
            ("neo-hookean", ModelKind::NeoHookean),
            ("mooney-rivlin", ModelKind::MooneyRivlin),
            ("horgan-murphy", ModelKind::HorganMurphy),
        ] {
            let config = parse(&format!("model.kind = {name}\n")).unwrap();
            assert_eq!(config.model_kind, kind);
            assert_eq!(kind.to_string(), name);
        }
        assert!(parse("model.kind = ogden\n").is_err());
    }

    #[test]
    fn polytropic_gas_picks_up_parameters() {
        let config = parse("gas.kind = polytropic\ngas.eta = 1.2\ngas.p_atm_pa = 9e4\n").unwrap();
        assert_eq!(
            config.gas_law,
            GasLaw::Polytropic {
                heat_capacity_ratio: 1.2,
                atmospheric_pressure: 9e4
            }
        );
        assert!(parse("gas.kind = polytropic\ngas.eta = -1\n").is_err());
        assert!(parse("gas.kind = vacuum\n").is_err());
    }

    #[test]
    fn horgan_murphy_epsilon_defaults_to_moduli_ratio() {
        let config = parse("model.kind = horgan-murphy\n").unwrap();
        match config.matrix_model() {
            MatrixModel::HorganMurphy { epsilon, .. } => {
                assert!((epsilon - 1.2e6 / 4.0e9).abs() < 1e-18);
            }
            other => panic!("unexpected {other:?}"),
        }
        let explicit = parse("model.kind = horgan-murphy\nmodel.epsilon = 0.005\n").unwrap();
        assert_eq!(explicit.epsilon, Some(0.005));
        assert!(parse("model.epsilon = 0.5\n").is_err());
    }

    #[test]
    fn sweep_extension_validated() {
        let config = parse("sweep.extend_to_ratio = 25\nsweep.extend_points = 10\n").unwrap();
        assert_eq!(config.extend_to_ratio, Some(25.0));
        let grid = config.pressure_grid();
        assert_eq!(grid.len(), 210);
        assert!((grid.last().unwrap() - 25.0 * 1.2e6).abs() < 1e-6);
        assert!(parse("sweep.extend_to_ratio = 0.5\n").is_err());
        assert!(parse("sweep.points = 1\n").is_err());
        assert!(parse("buckling.samples = 8\n").is_err());
    }

    #[test]
    fn correction_pressure_choices() {
        assert_eq!(
            parse("correction.pressure = net\n")
                .unwrap()
                .correction_pressure,
            CorrectionPressure::NetOfInner
        );
        assert!(parse("correction.pressure = off\n").is_err());
    }

    #[test]
    fn paired_material_overrides() {
        let config = parse("matrix.kappa_pa = 0.4e9\n").unwrap();
        assert_eq!(config.matrix.bulk_modulus(), 0.4e9);
        assert_eq!(config.matrix.shear_modulus(), 1.2e6);
        assert!(parse("shell.mu_pa = -1\n").is_err());
    }
}
