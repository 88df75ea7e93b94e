//! Critical pressure of a spherical shell embedded in an unbounded elastic
//! matrix, after Fok & Allwright.
//!
//! The criterion gives the buckling pressure as a function of the shell
//! thickness-to-mid-radius ratio and a real mode number `n > 1`:
//!
//! `p(x, n) / E_s = (2/3) (1+nu_m)/(1-nu_m)
//!                  (1 + (1-nu_s)/(1+nu_m) (E_m/E_s) / x)
//!                  (p1(n) x^3 + p2(n) x + p3(n))`.
//!
//! Instead of minimizing over `n` for each shell, the mode number is treated
//! as a continuous parameter: for each `n` the stationarity condition
//! `p1'(n) x^3 + p2'(n) x + p3'(n) = 0` is solved for the critical ratio
//! `x_c(n)`, which traces the (x_c, p_c) envelope once and supports both
//! lookup directions.

use crate::error::{Error, Result};
use crate::material::ElasticMaterial;
use crate::numeric::{cubic_real_roots, find_root_bracketed, golden_minimize, MonotoneCubic};

/// Residual bound each table sample must satisfy in the stationarity cubic.
const STATIONARITY_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct Constants {
    e_shell: f64,
    nu_shell: f64,
    nu_matrix: f64,
    /// E_m / E_s
    modulus_ratio: f64,
}

impl Constants {
    fn new(shell: &ElasticMaterial, matrix: &ElasticMaterial) -> Self {
        let ds = shell.derived();
        let dm = matrix.derived();
        Self {
            e_shell: ds.youngs_modulus,
            nu_shell: ds.poissons_ratio,
            nu_matrix: dm.poissons_ratio,
            modulus_ratio: dm.youngs_modulus / ds.youngs_modulus,
        }
    }

    fn coefficients(&self, n: f64) -> (f64, f64, f64) {
        let ns = self.nu_shell;
        let nm = self.nu_matrix;
        let p1 = (n * (n + 1.0) - (1.0 - ns)) / (12.0 * (1.0 - ns * ns));
        let p2 = 2.0 / ((n - 1.0) * (n + 2.0) * (1.0 + ns));
        let numer = (2.0 * n.powi(3) - n * n + 3.0 * n + 2.0)
            - nm * (2.0 * n.powi(3) - 3.0 * n * n + 5.0 * n + 2.0);
        let denom = (n - 1.0).powi(2)
            * (n + 2.0)
            * (3.0 * n + 2.0 - 2.0 * nm * (2.0 * n + 1.0))
            * (1.0 + nm);
        let p3 = self.modulus_ratio * numer / denom;
        (p1, p2, p3)
    }

    fn coefficient_derivatives(&self, n: f64) -> (f64, f64, f64) {
        let ns = self.nu_shell;
        let nm = self.nu_matrix;
        let dp1 = (2.0 * n + 1.0) / (12.0 * (1.0 - ns * ns));
        let q = (n - 1.0) * (n + 2.0);
        let dp2 = -2.0 * (2.0 * n + 1.0) / (q * q * (1.0 + ns));
        // p3 = (E_m/E_s) N(n) / D(n), D = (1+nu_m) (n-1)^2 (n+2) g(n).
        let numer = (2.0 * n.powi(3) - n * n + 3.0 * n + 2.0)
            - nm * (2.0 * n.powi(3) - 3.0 * n * n + 5.0 * n + 2.0);
        let dnumer = (6.0 * n * n - 2.0 * n + 3.0) - nm * (6.0 * n * n - 6.0 * n + 5.0);
        let g = 3.0 * n + 2.0 - 2.0 * nm * (2.0 * n + 1.0);
        let dg = 3.0 - 4.0 * nm;
        let denom = (1.0 + nm) * (n - 1.0).powi(2) * (n + 2.0) * g;
        let ddenom =
            (1.0 + nm) * (3.0 * (n - 1.0) * (n + 1.0) * g + (n - 1.0).powi(2) * (n + 2.0) * dg);
        let dp3 = self.modulus_ratio * (dnumer * denom - numer * ddenom) / (denom * denom);
        (dp1, dp2, dp3)
    }

    fn pressure(&self, mid_ratio: f64, n: f64) -> f64 {
        let (p1, p2, p3) = self.coefficients(n);
        let prefactor = (2.0 / 3.0) * (1.0 + self.nu_matrix) / (1.0 - self.nu_matrix)
            * (1.0
                + (1.0 - self.nu_shell) / (1.0 + self.nu_matrix) * self.modulus_ratio / mid_ratio);
        self.e_shell * prefactor * (p1 * mid_ratio.powi(3) + p2 * mid_ratio + p3)
    }
}

fn check_inputs(mid_ratio: Option<f64>, mode: f64) -> Result<()> {
    if let Some(x) = mid_ratio {
        if !(x > 0.0 && x <= 2.0) {
            return Err(Error::Domain(format!(
                "shell ratio must lie in (0, 2], got {x}"
            )));
        }
    }
    if !(mode > 1.0) {
        return Err(Error::Domain(format!(
            "buckling mode number must exceed 1, got {mode}"
        )));
    }
    Ok(())
}

/// Buckling pressure of the embedded shell at mid-ratio `mid_ratio` for mode
/// number `n`, from the shell/matrix elastic constants.
pub fn fa_pressure(
    mid_ratio: f64,
    mode: f64,
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
) -> Result<f64> {
    check_inputs(Some(mid_ratio), mode)?;
    Ok(Constants::new(shell, matrix).pressure(mid_ratio, mode))
}

/// Same criterion evaluated directly from `(E_s, nu_s, E_m, nu_m)`; permits
/// degenerate matrices such as `E_m = 0`.
pub fn fa_pressure_from_constants(
    mid_ratio: f64,
    mode: f64,
    e_shell: f64,
    nu_shell: f64,
    e_matrix: f64,
    nu_matrix: f64,
) -> Result<f64> {
    check_inputs(Some(mid_ratio), mode)?;
    if !(e_shell > 0.0) {
        return Err(Error::InvalidMaterial(format!(
            "shell Young's modulus must be positive, got {e_shell}"
        )));
    }
    let constants = Constants {
        e_shell,
        nu_shell,
        nu_matrix,
        modulus_ratio: e_matrix / e_shell,
    };
    Ok(constants.pressure(mid_ratio, mode))
}

fn critical_ratio_for_constants(constants: &Constants, mode: f64) -> Result<f64> {
    let (dp1, dp2, dp3) = constants.coefficient_derivatives(mode);
    let roots = cubic_real_roots(dp1, 0.0, dp2, dp3);

    let mut best: Option<(f64, f64)> = None;
    for x in roots {
        if !(x > 0.0 && x <= 2.0) {
            continue;
        }
        // Keep stationary points where p(x, .) has a minimum over the mode
        // number: positive centered second difference.
        let h = 1e-4 * mode;
        let center = constants.pressure(x, mode);
        let curvature =
            constants.pressure(x, mode - h) - 2.0 * center + constants.pressure(x, mode + h);
        if curvature <= 0.0 {
            continue;
        }
        match best {
            Some((_, p)) if center >= p => {}
            _ => best = Some((x, center)),
        }
    }
    best.map(|(x, _)| x).ok_or(Error::NoCriticalRatio { mode })
}

/// Critical thickness ratio `x_c(n)`: the positive root of the stationarity
/// cubic at which `p(x, .)` attains its minimum over the mode number.
pub fn critical_ratio_for_mode(
    mode: f64,
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
) -> Result<f64> {
    check_inputs(None, mode)?;
    critical_ratio_for_constants(&Constants::new(shell, matrix), mode)
}

/// One point of the critical envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucklingSample {
    pub mode: f64,
    pub critical_ratio: f64,
    pub critical_pressure: f64,
}

/// Result of a forward lookup: either the shell buckles at a tabulated
/// pressure, or its ratio is above every tabulated critical ratio and it
/// never buckles within the swept envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalPressure {
    Buckles(f64),
    NeverBuckles,
}

/// Result of an inverse lookup: shells with ratio at or below `ratio` have
/// buckled. `saturated` flags pressures beyond the tabulated envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRatio {
    pub ratio: f64,
    pub saturated: bool,
}

/// Monotone table of `(n, x_c, p_c)` samples, ordered by ascending critical
/// ratio, with shape-preserving interpolants for both lookup directions.
#[derive(Debug, Clone)]
pub struct BucklingTable {
    samples: Vec<BucklingSample>,
    constants: Constants,
    shell: ElasticMaterial,
    matrix: ElasticMaterial,
    mode_lo: f64,
    mode_hi: f64,
    mode_by_ratio: MonotoneCubic,
}

/// Builds the critical envelope over a log-spaced grid of mode numbers.
///
/// Modes whose stationarity cubic has no admissible root are skipped. The
/// build fails if the resulting `(x_c, p_c)` samples are not strictly
/// monotone, or if any sample violates the stationarity residual bound.
pub fn build_buckling_table(
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
    mode_min: f64,
    mode_max: f64,
    samples: usize,
) -> Result<BucklingTable> {
    if !(mode_min > 1.0) || !(mode_min < mode_max) {
        return Err(Error::InvalidParameter(format!(
            "mode range must satisfy 1 < n_min < n_max, got [{mode_min}, {mode_max}]"
        )));
    }
    if samples < 16 {
        return Err(Error::InvalidParameter(format!(
            "table needs at least 16 samples, got {samples}"
        )));
    }

    let constants = Constants::new(shell, matrix);
    let log_lo = mode_min.ln();
    let log_hi = mode_max.ln();
    let mut rows: Vec<BucklingSample> = Vec::with_capacity(samples);
    for i in 0..samples {
        let mode = (log_lo + (log_hi - log_lo) * i as f64 / (samples - 1) as f64).exp();
        let Ok(ratio) = critical_ratio_for_constants(&constants, mode) else {
            continue;
        };
        let (dp1, dp2, dp3) = constants.coefficient_derivatives(mode);
        let residual = dp1 * ratio.powi(3) + dp2 * ratio + dp3;
        if residual.abs() > STATIONARITY_RESIDUAL {
            return Err(Error::TableBuild(format!(
                "stationarity residual {residual:e} exceeds {STATIONARITY_RESIDUAL:e} at n = {mode}"
            )));
        }
        rows.push(BucklingSample {
            mode,
            critical_ratio: ratio,
            critical_pressure: constants.pressure(ratio, mode),
        });
    }
    if rows.len() < 2 {
        return Err(Error::TableBuild(format!(
            "only {} admissible samples over n in [{mode_min}, {mode_max}]",
            rows.len()
        )));
    }

    rows.sort_by(|a, b| a.critical_ratio.partial_cmp(&b.critical_ratio).unwrap());
    for pair in rows.windows(2) {
        if !(pair[0].critical_ratio < pair[1].critical_ratio) {
            return Err(Error::TableBuild(format!(
                "critical ratio not strictly monotone between n = {} and n = {}",
                pair[0].mode, pair[1].mode
            )));
        }
        if !(pair[0].critical_pressure < pair[1].critical_pressure) {
            return Err(Error::TableBuild(format!(
                "critical pressure not strictly monotone between n = {} and n = {}",
                pair[0].mode, pair[1].mode
            )));
        }
    }

    let xs: Vec<f64> = rows.iter().map(|s| s.critical_ratio).collect();
    let modes: Vec<f64> = rows.iter().map(|s| s.mode).collect();
    let mode_by_ratio = MonotoneCubic::new(xs, modes)?;

    Ok(BucklingTable {
        mode_lo: rows.iter().map(|s| s.mode).fold(f64::INFINITY, f64::min),
        mode_hi: rows.iter().map(|s| s.mode).fold(0.0, f64::max),
        samples: rows,
        constants,
        shell: *shell,
        matrix: *matrix,
        mode_by_ratio,
    })
}

impl BucklingTable {
    pub fn samples(&self) -> &[BucklingSample] {
        &self.samples
    }

    pub fn shell_material(&self) -> &ElasticMaterial {
        &self.shell
    }

    pub fn matrix_material(&self) -> &ElasticMaterial {
        &self.matrix
    }

    pub fn min_ratio(&self) -> f64 {
        self.samples.first().unwrap().critical_ratio
    }

    pub fn max_ratio(&self) -> f64 {
        self.samples.last().unwrap().critical_ratio
    }

    pub fn min_pressure(&self) -> f64 {
        self.samples.first().unwrap().critical_pressure
    }

    pub fn max_pressure(&self) -> f64 {
        self.samples.last().unwrap().critical_pressure
    }

    /// Critical pressure for a shell of the given mid-ratio.
    ///
    /// The interpolated mode seeds a golden-section minimization of
    /// `p(x, n)` over `n` (in log space), so the returned pressure is a true
    /// minimum rather than an interpolation artifact.
    pub fn critical_pressure(&self, mid_ratio: f64) -> Result<CriticalPressure> {
        if !(mid_ratio > 0.0 && mid_ratio <= 2.0) {
            return Err(Error::Domain(format!(
                "shell ratio must lie in (0, 2], got {mid_ratio}"
            )));
        }
        let fuzz = 1.0 + 1e-12;
        if mid_ratio > self.max_ratio() * fuzz {
            return Ok(CriticalPressure::NeverBuckles);
        }
        if mid_ratio * fuzz < self.min_ratio() {
            return Err(Error::TableExtension {
                ratio: mid_ratio,
                table_min: self.min_ratio(),
            });
        }
        let x = mid_ratio.clamp(self.min_ratio(), self.max_ratio());
        Ok(CriticalPressure::Buckles(self.refined_pressure(x)))
    }

    fn refined_pressure(&self, mid_ratio: f64) -> f64 {
        let seed = self
            .mode_by_ratio
            .eval(mid_ratio)
            .clamp(self.mode_lo, self.mode_hi);
        let mut lo = (seed / 8.0).max(self.mode_lo);
        let mut hi = (seed * 8.0).min(self.mode_hi);
        let objective = |t: f64| self.constants.pressure(mid_ratio, t.exp());
        let (t_min, mut p_min) = golden_minimize(objective, lo.ln(), hi.ln(), 1e-13, 200);
        // A minimum pinned to an interior bracket edge means the seed was
        // off; retry over the whole tabulated mode range.
        let edge = 1e-6 * (lo.ln().abs() + hi.ln().abs());
        let at_lo = (t_min - lo.ln()).abs() <= edge && lo > self.mode_lo;
        let at_hi = (hi.ln() - t_min).abs() <= edge && hi < self.mode_hi;
        if at_lo || at_hi {
            lo = self.mode_lo;
            hi = self.mode_hi;
            p_min = golden_minimize(objective, lo.ln(), hi.ln(), 1e-13, 300).1;
        }
        p_min
    }

    /// Ratio below which shells have buckled at pressure `p`. Total on
    /// `p >= 0`: returns 0 below the tabulated envelope and saturates at the
    /// table maximum above it.
    pub fn critical_ratio_at_pressure(&self, pressure: f64) -> Result<CriticalRatio> {
        if !(pressure >= 0.0) {
            return Err(Error::Domain(format!(
                "pressure must be non-negative, got {pressure}"
            )));
        }
        if pressure == 0.0 {
            return Ok(CriticalRatio {
                ratio: 0.0,
                saturated: false,
            });
        }
        let lo = self.min_ratio();
        let hi = self.max_ratio();
        let p_lo = self.refined_pressure(lo);
        if pressure < p_lo {
            return Ok(CriticalRatio {
                ratio: 0.0,
                saturated: false,
            });
        }
        let p_hi = self.refined_pressure(hi);
        if pressure >= p_hi {
            return Ok(CriticalRatio {
                ratio: hi,
                saturated: pressure > p_hi,
            });
        }
        let ratio =
            find_root_bracketed(|x| self.refined_pressure(x) - pressure, lo, hi, 1e-11, 300)?;
        Ok(CriticalRatio {
            ratio,
            saturated: false,
        })
    }
}
