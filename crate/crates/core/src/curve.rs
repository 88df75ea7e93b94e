//! Macroscopic pressure vs relative-volume-change curve: per-sphere volume
//! changes averaged over the Gamma distribution of shell ratios, with the
//! buckled/unbuckled split taken from the buckling table.

use crate::buckling::{BucklingTable, CriticalPressure};
use crate::error::{Error, Result};
use crate::geometry::{CompositeSpec, ShellGeometry};
use crate::linear;
use crate::material::{GasLaw, MatrixModel};
use crate::numeric::{find_root_bracketed, integrate};
use crate::postbuckle::{self, CorrectionPressure};
use dashmap::DashMap;
use rayon::prelude::*;

/// One sample of the macroscopic load curve, pressures scaled by the matrix
/// shear modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadCurvePoint {
    pub pressure_ratio: f64,
    pub volume_change: f64,
    pub buckled_fraction: f64,
}

/// Ordered load curve with monotone pressure, volume change in [0, 1) and a
/// non-decreasing buckled fraction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LoadCurve {
    points: Vec<LoadCurvePoint>,
}

impl LoadCurve {
    // Quadrature-level wobble allowed in the monotonicity checks.
    const SLACK: f64 = 1e-9;

    pub fn new(points: Vec<LoadCurvePoint>) -> Result<Self> {
        Self::with_slack(points, Self::SLACK)
    }

    /// As [`LoadCurve::new`] with an explicit monotonicity slack.
    ///
    /// The incompressible post-buckling branch carries no matrix volumetric
    /// strain, so each shell's hand-off at its critical pressure steps the
    /// volume change down by up to `p_c / kappa_m`; sweeps pass that bound
    /// here.
    pub fn with_slack(points: Vec<LoadCurvePoint>, slack: f64) -> Result<Self> {
        let curve = Self { points };
        curve.validate(slack.max(Self::SLACK))?;
        Ok(curve)
    }

    pub fn points(&self) -> &[LoadCurvePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn validate(&self, slack: f64) -> Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            if !(p.volume_change >= -Self::SLACK && p.volume_change < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "volume change {} outside [0, 1) at sample {i}",
                    p.volume_change
                )));
            }
            if !(-Self::SLACK..=1.0 + Self::SLACK).contains(&p.buckled_fraction) {
                return Err(Error::InvalidParameter(format!(
                    "buckled fraction {} outside [0, 1] at sample {i}",
                    p.buckled_fraction
                )));
            }
        }
        for (i, pair) in self.points.windows(2).enumerate() {
            if !(pair[0].pressure_ratio < pair[1].pressure_ratio) {
                return Err(Error::InvalidParameter(format!(
                    "pressure ratios not strictly increasing at sample {i}"
                )));
            }
            if pair[1].volume_change < pair[0].volume_change - slack {
                return Err(Error::InvalidParameter(format!(
                    "volume change decreases at sample {}",
                    i + 1
                )));
            }
            if pair[1].buckled_fraction < pair[0].buckled_fraction - Self::SLACK {
                return Err(Error::InvalidParameter(format!(
                    "buckled fraction decreases at sample {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Numerical controls for the distribution average.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Absolute quadrature tolerance on the volume-change integral.
    pub quad_abs_tol: f64,
    /// Relative quadrature tolerance.
    pub quad_rel_tol: f64,
    /// Distribution mass below which a tail panel is skipped.
    pub tail_mass: f64,
    /// Subdivision budget per integration region.
    pub max_intervals: usize,
    /// Pressure entering the compressibility correction constant.
    pub correction_pressure: CorrectionPressure,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-12,
            quad_rel_tol: 1e-10,
            tail_mass: 1e-12,
            max_intervals: 512,
            correction_pressure: CorrectionPressure::FarField,
        }
    }
}

/// Evaluator for one composite specification against one buckling table.
///
/// Residual shell pressures are pressure-independent and cached per shell
/// ratio; the cache is concurrent, so sweeps may evaluate pressure samples
/// in parallel.
pub struct CompositeCurve<'a> {
    spec: &'a CompositeSpec,
    table: &'a BucklingTable,
    options: SweepOptions,
    residual_cache: DashMap<u64, f64>,
}

impl<'a> CompositeCurve<'a> {
    pub fn new(spec: &'a CompositeSpec, table: &'a BucklingTable) -> Self {
        Self::with_options(spec, table, SweepOptions::default())
    }

    pub fn with_options(
        spec: &'a CompositeSpec,
        table: &'a BucklingTable,
        options: SweepOptions,
    ) -> Self {
        Self {
            spec,
            table,
            options,
            residual_cache: DashMap::new(),
        }
    }

    pub fn spec(&self) -> &CompositeSpec {
        self.spec
    }

    pub fn table(&self) -> &BucklingTable {
        self.table
    }

    /// Residual shell pressure for a shell of the given ratio, evaluated at
    /// that shell's own critical pressure.
    fn residual_pressure(&self, mid_ratio: f64) -> Result<f64> {
        if let Some(hit) = self.residual_cache.get(&mid_ratio.to_bits()) {
            return Ok(*hit);
        }
        let pc = match self.table.critical_pressure(mid_ratio)? {
            CriticalPressure::Buckles(p) => p,
            CriticalPressure::NeverBuckles => {
                return Err(Error::Domain(format!(
                    "residual pressure requested for a never-buckling ratio {mid_ratio}"
                )))
            }
        };
        let geometry = ShellGeometry::from_mid_ratio(mid_ratio)?;
        let value = linear::residual_shell_pressure(
            &geometry,
            &self.spec.shell_material,
            &self.spec.matrix_material,
            pc,
        )?;
        self.residual_cache.insert(mid_ratio.to_bits(), value);
        Ok(value)
    }

    fn prebuckle_delta(&self, mid_ratio: f64, pressure: f64) -> Result<f64> {
        let geometry = ShellGeometry::from_mid_ratio(mid_ratio)?;
        let solution = linear::solve_prebuckling(
            &geometry,
            &self.spec.shell_material,
            &self.spec.matrix_material,
            pressure,
            0.0,
        )?;
        linear::prebuckle_volume_change(&solution, self.spec.fictitious_radius())
    }

    fn postbuckle_delta(&self, mid_ratio: f64, pressure: f64) -> Result<f64> {
        let residual = self.residual_pressure(mid_ratio)?;
        self.cavity_delta(pressure, residual)
    }

    fn cavity_delta(&self, pressure: f64, residual: f64) -> Result<f64> {
        let outer = self.spec.fictitious_radius();
        let mu = self.spec.matrix_material.shear_modulus();
        match self.spec.matrix_model {
            MatrixModel::LinearElastic => self.linear_cavity_delta(pressure, residual),
            ref model => {
                let state = postbuckle::solve_cavity_radius(
                    pressure,
                    residual,
                    mu,
                    1.0,
                    model,
                    &self.spec.gas_law,
                )?;
                postbuckle::postbuckle_volume_change(
                    &state,
                    outer,
                    mu,
                    self.options.correction_pressure,
                )
            }
        }
    }

    // Reference-only linear treatment of the buckled cavity; the polytropic
    // law couples the inner pressure to the deformed radius, which a scalar
    // root solve untangles.
    fn linear_cavity_delta(&self, pressure: f64, residual: f64) -> Result<f64> {
        let matrix = &self.spec.matrix_material;
        let inner = match self.spec.gas_law {
            GasLaw::ConstantAtmospheric => residual,
            GasLaw::Polytropic { .. } => {
                let deformed_mismatch = |radius: f64| -> f64 {
                    let gas = postbuckle::gas_pressure(radius, 1.0, &self.spec.gas_law)
                        .unwrap_or(f64::INFINITY);
                    let solution = match linear::solve_cavity(matrix, pressure, residual + gas) {
                        Ok(s) => s,
                        Err(_) => return f64::INFINITY,
                    };
                    1.0 + solution.displacement(1.0) - radius
                };
                let radius = find_root_bracketed(deformed_mismatch, 1e-9, 1.0, 1e-13, 400)?;
                residual + postbuckle::gas_pressure(radius, 1.0, &self.spec.gas_law)?
            }
        };
        let solution = linear::solve_cavity(matrix, pressure, inner)?;
        linear::prebuckle_volume_change(&solution, self.spec.fictitious_radius())
    }

    /// Volume change of a single composite sphere: linear branch while the
    /// shell holds, nonlinear cavity branch once `p` exceeds the shell's own
    /// critical pressure. A vanishing ratio means no shell at all: the
    /// cavity branch applies from the start with no residual support.
    pub fn sphere_volume_change(&self, mid_ratio: f64, pressure: f64) -> Result<f64> {
        if !(0.0..=2.0).contains(&mid_ratio) {
            return Err(Error::Domain(format!(
                "shell ratio must lie in [0, 2], got {mid_ratio}"
            )));
        }
        if mid_ratio < linear::CAVITY_RATIO_THRESHOLD {
            if pressure == 0.0 {
                return Ok(0.0);
            }
            return self.cavity_delta(pressure, 0.0);
        }
        match self.table.critical_pressure(mid_ratio)? {
            CriticalPressure::NeverBuckles => self.prebuckle_delta(mid_ratio, pressure),
            CriticalPressure::Buckles(pc) if pressure < pc => {
                self.prebuckle_delta(mid_ratio, pressure)
            }
            CriticalPressure::Buckles(_) => self.postbuckle_delta(mid_ratio, pressure),
        }
    }

    /// Macroscopic volume change and buckled fraction at pressure `p`.
    ///
    /// The distribution average is split at the moving critical ratio so
    /// each quadrature region sees a smooth integrand; tail regions holding
    /// less mass than `tail_mass` are skipped.
    pub fn total_volume_change(&self, pressure: f64) -> Result<(f64, f64)> {
        if !(pressure >= 0.0) {
            return Err(Error::Domain(format!(
                "pressure must be non-negative, got {pressure}"
            )));
        }
        let dist = &self.spec.distribution;
        let split = self.table.critical_ratio_at_pressure(pressure)?.ratio;
        let lo = dist.inverse_cdf(self.options.tail_mass)?.max(0.0);
        let hi = dist.inverse_cdf(1.0 - self.options.tail_mass)?.min(2.0);

        let mut total = 0.0;
        if split > lo {
            let upper = split.min(hi);
            let result = integrate(
                |x| Ok(self.postbuckle_delta(x, pressure)? * dist.pdf(x)),
                lo,
                upper,
                self.options.quad_abs_tol,
                self.options.quad_rel_tol,
                self.options.max_intervals,
            )?;
            total += result.value;
        }
        if hi > split.max(lo) {
            let lower = split.max(lo);
            let result = integrate(
                |x| Ok(self.prebuckle_delta(x, pressure)? * dist.pdf(x)),
                lower,
                hi,
                self.options.quad_abs_tol,
                self.options.quad_rel_tol,
                self.options.max_intervals,
            )?;
            total += result.value;
        }
        Ok((total, dist.cdf(split)))
    }

    /// Load curve over a strictly increasing pressure grid starting at zero.
    /// Pressure samples are evaluated in parallel.
    pub fn sweep(&self, pressures: &[f64]) -> Result<LoadCurve> {
        if pressures.is_empty() {
            return Ok(LoadCurve::default());
        }
        if pressures[0] != 0.0 {
            return Err(Error::InvalidParameter(
                "pressure grid must start at zero".into(),
            ));
        }
        if pressures.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter(
                "pressure grid must be strictly increasing".into(),
            ));
        }
        let mu = self.spec.matrix_material.shear_modulus();
        let points: Vec<LoadCurvePoint> = pressures
            .par_iter()
            .map(|&p| {
                let (volume_change, buckled_fraction) = self.total_volume_change(p)?;
                Ok(LoadCurvePoint {
                    pressure_ratio: p / mu,
                    volume_change,
                    buckled_fraction,
                })
            })
            .collect::<Result<_>>()?;
        LoadCurve::with_slack(points, self.handoff_slack(pressures))
    }

    // Largest admissible downward step: the volumetric strain the
    // incompressible branch drops at a hand-off, with margin for the
    // quadratic remainder.
    fn handoff_slack(&self, pressures: &[f64]) -> f64 {
        let top = pressures.last().copied().unwrap_or(0.0);
        1.5 * top / self.spec.matrix_material.bulk_modulus()
    }

    /// Load curve of a monodisperse composite with every shell at the same
    /// ratio: the delta-distribution limit, evaluated without quadrature.
    pub fn single_ratio_sweep(&self, pressures: &[f64], mid_ratio: f64) -> Result<LoadCurve> {
        if pressures.is_empty() {
            return Ok(LoadCurve::default());
        }
        let pc = match self.table.critical_pressure(mid_ratio)? {
            CriticalPressure::Buckles(p) => Some(p),
            CriticalPressure::NeverBuckles => None,
        };
        let mu = self.spec.matrix_material.shear_modulus();
        let points: Vec<LoadCurvePoint> = pressures
            .par_iter()
            .map(|&p| {
                let volume_change = self.sphere_volume_change(mid_ratio, p)?;
                let buckled_fraction = match pc {
                    Some(pc) if p >= pc => 1.0,
                    _ => 0.0,
                };
                Ok(LoadCurvePoint {
                    pressure_ratio: p / mu,
                    volume_change,
                    buckled_fraction,
                })
            })
            .collect::<Result<_>>()?;
        LoadCurve::with_slack(points, self.handoff_slack(pressures))
    }
}

/// Pressure grid in Pa: `points` uniform samples on `[0, max_ratio * mu]`,
/// optionally extended by log-spaced samples up to `extend_to_ratio * mu`.
pub fn pressure_grid(
    matrix_shear_modulus: f64,
    max_ratio: f64,
    points: usize,
    extension: Option<(f64, usize)>,
) -> Vec<f64> {
    let mut grid = Vec::with_capacity(points);
    if points == 0 {
        return grid;
    }
    let top = max_ratio * matrix_shear_modulus;
    for i in 0..points {
        grid.push(top * i as f64 / (points - 1).max(1) as f64);
    }
    if let Some((extend_ratio, extend_points)) = extension {
        let far = extend_ratio * matrix_shear_modulus;
        if far > top && extend_points > 0 {
            let factor = far / top;
            for i in 1..=extend_points {
                grid.push(top * factor.powf(i as f64 / extend_points as f64));
            }
        }
    }
    grid
}
