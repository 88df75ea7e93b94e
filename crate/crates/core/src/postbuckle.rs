//! Finite-deformation response of a pressurized spherical cavity in an
//! incompressible (or slightly compressible) hyperelastic matrix.
//!
//! A buckled microsphere is statically replaced by a cavity of the same
//! undeformed radius, loaded by the far-field pressure outside and by the
//! residual shell pressure plus the gas pressure inside. Incompressibility
//! fixes the deformation to `r(R) = (R^3 + alpha)^{1/3}` with
//! `alpha = a_bar^3 - A^3`, and the strain energy function determines the
//! pressure needed to hold a given cavity radius:
//!
//! neo-Hookean: `(p - p_in)/mu = (1/2)(A/a)^4 + 2(A/a) - 5/2`
//! Mooney-Rivlin: the gamma-weighted combination of the neo-Hookean bracket
//! and `(A/a)^2 - 2(a/A) + 1`.
//!
//! The slightly compressible Horgan-Murphy response adds the first-order
//! correction `epsilon r1(R)` with `epsilon = mu/kappa`.

use crate::error::{Error, Result};
use crate::material::{GasLaw, MatrixModel};
use crate::numeric::find_root_bracketed;

/// Which pressure enters the first-order compressibility constant: the raw
/// far-field pressure (as the correction is stated), or the net pressure
/// after subtracting the inner tractions (for sensitivity runs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrectionPressure {
    #[default]
    FarField,
    NetOfInner,
}

/// Equilibrium state of the post-buckling cavity.
#[derive(Debug, Clone, Copy)]
pub struct CavityState {
    pub undeformed_radius: f64,
    pub deformed_radius: f64,
    pub residual_shell_pressure: f64,
    pub gas_pressure: f64,
    pub applied_pressure: f64,
    pub model: MatrixModel,
}

impl CavityState {
    /// Incompressibility offset `alpha = a_bar^3 - A^3 <= 0` under
    /// compression.
    pub fn volume_offset(&self) -> f64 {
        self.deformed_radius.powi(3) - self.undeformed_radius.powi(3)
    }

    pub fn inner_pressure(&self) -> f64 {
        self.residual_shell_pressure + self.gas_pressure
    }
}

/// Gauge pressure of the sealed gas at cavity radius `deformed_radius`.
pub fn gas_pressure(deformed_radius: f64, undeformed_radius: f64, law: &GasLaw) -> Result<f64> {
    if !(deformed_radius > 0.0) {
        return Err(Error::Domain(format!(
            "deformed cavity radius must be positive, got {deformed_radius}"
        )));
    }
    match law {
        GasLaw::ConstantAtmospheric => Ok(0.0),
        GasLaw::Polytropic {
            heat_capacity_ratio,
            atmospheric_pressure,
        } => {
            let compression = undeformed_radius / deformed_radius;
            Ok(atmospheric_pressure * (compression.powf(3.0 * heat_capacity_ratio) - 1.0))
        }
    }
}

/// Scaled pressure difference `(p - p_in)/mu` that holds the cavity at
/// `deformed_radius`; strictly decreasing in the deformed radius.
pub fn cavity_pressure_relation(
    deformed_radius: f64,
    undeformed_radius: f64,
    model: &MatrixModel,
) -> Result<f64> {
    if !(deformed_radius > 0.0 && deformed_radius <= undeformed_radius) {
        return Err(Error::Domain(format!(
            "deformed radius must lie in (0, A], got {deformed_radius} with A = {undeformed_radius}"
        )));
    }
    let inv = undeformed_radius / deformed_radius;
    let neo_hookean = 0.5 * inv.powi(4) + 2.0 * inv - 2.5;
    match *model {
        MatrixModel::NeoHookean => Ok(neo_hookean),
        MatrixModel::MooneyRivlin { gamma } => {
            let second = inv * inv - 2.0 / inv + 1.0;
            Ok((0.5 + gamma) * neo_hookean + (0.5 - gamma) * second)
        }
        ref other => Err(Error::UnsupportedModel(format!(
            "cavity pressure relation is defined for the incompressible models, got {other:?}"
        ))),
    }
}

// Leading-order incompressible relation used by the radius solve; the
// Horgan-Murphy model shares the Mooney-Rivlin leading order.
fn leading_order_model(model: &MatrixModel) -> Result<MatrixModel> {
    match *model {
        MatrixModel::NeoHookean => Ok(MatrixModel::NeoHookean),
        MatrixModel::MooneyRivlin { gamma } => Ok(MatrixModel::MooneyRivlin { gamma }),
        MatrixModel::HorganMurphy { gamma, .. } => Ok(MatrixModel::MooneyRivlin { gamma }),
        MatrixModel::LinearElastic => Err(Error::UnsupportedModel(
            "linear elastic post-buckling is handled by the linear cavity solve".into(),
        )),
    }
}

/// Deformed cavity radius under far-field pressure `pressure` with inner
/// tractions from the residual shell pressure and the gas law.
///
/// The balance `p = mu rel(a) + p_in^s + p_gas(a)` has a strictly decreasing
/// right side in `a`, so the root on `(0, A]` is unique; it is bracketed on
/// `[1e-9 A, A]` and polished to 1e-12 relative.
pub fn solve_cavity_radius(
    pressure: f64,
    residual_shell_pressure: f64,
    matrix_shear_modulus: f64,
    undeformed_radius: f64,
    model: &MatrixModel,
    law: &GasLaw,
) -> Result<CavityState> {
    if !(matrix_shear_modulus > 0.0) {
        return Err(Error::InvalidMaterial(format!(
            "matrix shear modulus must be positive, got {matrix_shear_modulus}"
        )));
    }
    if !(undeformed_radius > 0.0) {
        return Err(Error::Domain(format!(
            "undeformed radius must be positive, got {undeformed_radius}"
        )));
    }
    let leading = leading_order_model(model)?;
    if pressure < residual_shell_pressure * (1.0 - 1e-12) - 1e-12 * matrix_shear_modulus {
        return Err(Error::WouldExpand {
            pressure,
            residual: residual_shell_pressure,
        });
    }

    let a = undeformed_radius;
    let imbalance = |radius: f64| -> Result<f64> {
        Ok(
            matrix_shear_modulus * cavity_pressure_relation(radius, a, &leading)?
                + residual_shell_pressure
                + gas_pressure(radius, a, law)?
                - pressure,
        )
    };

    // Zero net load: the undeformed state already balances.
    if imbalance(a)?.abs() <= 1e-14 * (pressure.abs() + matrix_shear_modulus) {
        return Ok(CavityState {
            undeformed_radius: a,
            deformed_radius: a,
            residual_shell_pressure,
            gas_pressure: gas_pressure(a, a, law)?,
            applied_pressure: pressure,
            model: *model,
        });
    }

    let deformed = find_root_bracketed(
        |radius| {
            matrix_shear_modulus
                * cavity_pressure_relation(radius, a, &leading).unwrap_or(f64::INFINITY)
                + residual_shell_pressure
                + gas_pressure(radius, a, law).unwrap_or(f64::INFINITY)
                - pressure
        },
        1e-9 * a,
        a,
        1e-13,
        400,
    )?;

    Ok(CavityState {
        undeformed_radius: a,
        deformed_radius: deformed,
        residual_shell_pressure,
        gas_pressure: gas_pressure(deformed, a, law)?,
        applied_pressure: pressure,
        model: *model,
    })
}

/// Incompressible deformed position `r0(R) = (R^3 + alpha)^{1/3}` of the
/// material sphere with undeformed radius `R >= A`.
pub fn deformed_radius_incompressible(reference_radius: f64, state: &CavityState) -> f64 {
    (reference_radius.powi(3) + state.volume_offset()).cbrt()
}

/// Integration constant of the first-order compressibility correction.
///
/// Polynomial in the deformed cavity radius with coefficients in the
/// undeformed radius, the pressure entering the correction and the shear
/// modulus; vanishes identically when the cavity is undeformed.
pub fn correction_constant(
    deformed_radius: f64,
    undeformed_radius: f64,
    pressure: f64,
    gamma: f64,
    matrix_shear_modulus: f64,
) -> Result<f64> {
    let a = undeformed_radius;
    let ab = deformed_radius;
    let p = pressure;
    let mu = matrix_shear_modulus;

    let denominator = 480.0
        * ab
        * (a.powi(3) + ab.powi(3))
        * (ab * ab * (1.0 - 2.0 * gamma) + a * a * (1.0 + 2.0 * gamma))
        * mu;
    if denominator.abs() < f64::MIN_POSITIVE * 1e20 || !denominator.is_finite() {
        return Err(Error::Domain(format!(
            "compressibility correction constant is singular at a_bar = {ab}, A = {a}, gamma = {gamma}"
        )));
    }

    let alpha8 = a
        * (40.0 * p * (7.0 + 6.0 * gamma)
            - 3.0 * (83.0 + 4.0 * gamma * (43.0 * gamma - 57.0)) * mu);
    let alpha7 = 240.0 * a.powi(2) * (1.0 - 2.0 * gamma).powi(2) * mu;
    let alpha6 =
        -20.0 * a.powi(3) * (2.0 * gamma - 1.0) * (4.0 * p + 3.0 * (6.0 * gamma - 1.0) * mu);
    let alpha5 = 120.0 * a.powi(4) * (4.0 * gamma * gamma - 1.0) * mu;
    let alpha4 = -10.0
        * a.powi(5)
        * (p * (4.0 + 8.0 * gamma) + 3.0 * (5.0 + 4.0 * gamma * (9.0 * gamma - 5.0)) * mu);
    let alpha3 = 16.0
        * a.powi(6)
        * (10.0 * p * (2.0 * gamma - 1.0) + 9.0 * mu + 6.0 * gamma * (16.0 * gamma - 9.0) * mu);
    let alpha2 = 60.0 * a.powi(7) * (4.0 * gamma * gamma - 1.0) * mu;
    let alpha1 =
        -40.0 * a.powi(8) * (1.0 + 2.0 * gamma) * (4.0 * p + 3.0 * (6.0 * gamma - 1.0) * mu);
    let alpha0 = 135.0 * a.powi(9) * (1.0 + 2.0 * gamma).powi(2) * mu;

    let numerator =
        (((((((alpha8 * ab + alpha7) * ab + alpha6) * ab + alpha5) * ab + alpha4) * ab + alpha3)
            * ab
            + alpha2)
            * ab
            + alpha1)
            * ab
            + alpha0;
    Ok(-numerator / denominator)
}

/// First-order radial correction `r1(R)` of the slightly compressible
/// expansion about the incompressible deformation.
pub fn radius_correction(
    reference_radius: f64,
    deformed_radius: f64,
    undeformed_radius: f64,
    pressure: f64,
    gamma: f64,
    matrix_shear_modulus: f64,
) -> Result<f64> {
    let r = reference_radius;
    let alpha = deformed_radius.powi(3) - undeformed_radius.powi(3);
    let r0 = (r.powi(3) + alpha).cbrt();
    let c1 = correction_constant(
        deformed_radius,
        undeformed_radius,
        pressure,
        gamma,
        matrix_shear_modulus,
    )?;
    let p = pressure;
    let mu = matrix_shear_modulus;
    let numerator = 2.0 * r * r * r0 * r0 * (2.0 * gamma - 1.0)
        + r.powi(4) * (1.0 + 2.0 * gamma)
        + r.powi(3) * r0 * (1.0 - 6.0 * gamma - 4.0 * p / (3.0 * mu))
        + 4.0 * c1 * r0;
    Ok(numerator / (4.0 * r0.powi(3)))
}

/// Deformed position including the first-order compressibility correction:
/// `r(R) = r0(R) + epsilon r1(R)`. Only meaningful for the Horgan-Murphy
/// model, which carries `epsilon` and the leading-order `gamma`.
pub fn slightly_compressible_radius(
    reference_radius: f64,
    state: &CavityState,
    matrix_shear_modulus: f64,
    correction: CorrectionPressure,
) -> Result<f64> {
    let MatrixModel::HorganMurphy { gamma, epsilon } = state.model else {
        return Err(Error::UnsupportedModel(format!(
            "compressibility correction requires the Horgan-Murphy model, got {:?}",
            state.model
        )));
    };
    let pressure = match correction {
        CorrectionPressure::FarField => state.applied_pressure,
        CorrectionPressure::NetOfInner => {
            state.applied_pressure - state.residual_shell_pressure - state.gas_pressure
        }
    };
    let r0 = deformed_radius_incompressible(reference_radius, state);
    let r1 = radius_correction(
        reference_radius,
        state.deformed_radius,
        state.undeformed_radius,
        pressure,
        gamma,
        matrix_shear_modulus,
    )?;
    Ok(r0 + epsilon * r1)
}

/// Relative volume change `1 - (s_bar/S)^3` of a buckled composite sphere of
/// undeformed outer radius `S`.
pub fn postbuckle_volume_change(
    state: &CavityState,
    outer_radius: f64,
    matrix_shear_modulus: f64,
    correction: CorrectionPressure,
) -> Result<f64> {
    if outer_radius < state.undeformed_radius {
        return Err(Error::Domain(format!(
            "composite sphere radius {outer_radius} lies inside the cavity"
        )));
    }
    let deformed_outer = match state.model {
        MatrixModel::HorganMurphy { .. } => {
            slightly_compressible_radius(outer_radius, state, matrix_shear_modulus, correction)?
        }
        MatrixModel::NeoHookean | MatrixModel::MooneyRivlin { .. } => {
            deformed_radius_incompressible(outer_radius, state)
        }
        MatrixModel::LinearElastic => {
            return Err(Error::UnsupportedModel(
                "linear elastic post-buckling is handled by the linear cavity solve".into(),
            ))
        }
    };
    if !(deformed_outer > 0.0) {
        return Err(Error::UnphysicalDeformation(format!(
            "deformed composite sphere radius {deformed_outer} is not positive"
        )));
    }
    let stretch = deformed_outer / outer_radius;
    Ok(1.0 - stretch * stretch * stretch)
}

/// Recovers the far-field pressure by integrating the radial equilibrium
/// equation `dT_rr/dr = -(2/r)(T_rr - T_tt)` outward from the cavity wall,
/// with the stress difference evaluated from the strain energy derivatives
/// under the incompressible deformation. Serves as the independent oracle
/// for the closed-form cavity relations.
pub fn ode_oracle_far_field_pressure(
    deformed_radius: f64,
    undeformed_radius: f64,
    model: &MatrixModel,
    inner_pressure: f64,
    matrix_shear_modulus: f64,
) -> Result<f64> {
    if !(deformed_radius > 0.0 && deformed_radius <= undeformed_radius) {
        return Err(Error::Domain(format!(
            "deformed radius must lie in (0, A], got {deformed_radius}"
        )));
    }
    let (w1, w2) = match *model {
        MatrixModel::NeoHookean => (0.5 * matrix_shear_modulus, 0.0),
        MatrixModel::MooneyRivlin { gamma } => (
            0.5 * (0.5 + gamma) * matrix_shear_modulus,
            0.5 * (0.5 - gamma) * matrix_shear_modulus,
        ),
        ref other => {
            return Err(Error::UnsupportedModel(format!(
                "stress oracle is defined for the incompressible models, got {other:?}"
            )))
        }
    };
    let alpha = deformed_radius.powi(3) - undeformed_radius.powi(3);

    // T_rr - T_tt = 2 W1 (l_r^2 - l_t^2) - 2 W2 (l_r^-2 - l_t^-2) with
    // l_r = l_t^-2 and hoop stretch l_t = r / R(r).
    let integrand = |r: f64| {
        let reference = (r * r * r - alpha).cbrt();
        let lt2 = (r / reference) * (r / reference);
        let lt4 = lt2 * lt2;
        let diff = 2.0 * w1 * (1.0 / lt4 - lt2) - 2.0 * w2 * (lt4 - 1.0 / lt2);
        2.0 * diff / r
    };

    let r_max = 1.0e4 * undeformed_radius;
    let compression = undeformed_radius / deformed_radius;
    let tolerance = 1e-10 * matrix_shear_modulus * compression.powi(4).max(1.0);

    // Geometric segments keep the adaptive rule efficient over the long,
    // decaying tail.
    let mut segments = vec![deformed_radius];
    let mut edge = deformed_radius;
    while edge < r_max {
        edge = (edge * 2.0).min(r_max);
        segments.push(edge);
    }
    let per_segment = tolerance / segments.len() as f64;

    let mut integral = 0.0;
    for pair in segments.windows(2) {
        integral += adaptive_simpson(&integrand, pair[0], pair[1], per_segment, 48)?;
    }
    Ok(inner_pressure + integral)
}

fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tolerance: f64, depth: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tolerance, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tolerance: f64,
    depth: usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tolerance {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Oracle(format!(
            "stress integration did not converge on [{a:e}, {b:e}]"
        )));
    }
    Ok(
        simpson_step(f, a, m, fa, flm, fm, left, tolerance / 2.0, depth - 1)?
            + simpson_step(f, m, b, fm, frm, fb, right, tolerance / 2.0, depth - 1)?,
    )
}
