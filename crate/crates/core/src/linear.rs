//! Linear elastic solution for a spherical shell bonded inside an unbounded
//! matrix under far-field hydrostatic pressure.
//!
//! Spherical symmetry reduces the problem to `u_r(r) = a r + b / r^2` per
//! region with radial stress `sigma_rr = 3 kappa a - 4 mu b / r^3`. The four
//! coefficients follow from the inner traction condition, the far-field
//! pressure, and continuity of displacement and radial stress at the
//! interface. Compression is negative.

use crate::error::{Error, Result};
use crate::geometry::ShellGeometry;
use crate::material::ElasticMaterial;
use nalgebra::{Matrix4, Vector4};

/// Thickness ratio below which the shell is treated as absent and the
/// problem solved as a bare cavity.
pub const CAVITY_RATIO_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
struct Region {
    material: ElasticMaterial,
    linear_coeff: f64,
    decay_coeff: f64,
}

impl Region {
    fn displacement(&self, r: f64) -> f64 {
        self.linear_coeff * r + self.decay_coeff / (r * r)
    }

    fn radial_stress(&self, r: f64) -> f64 {
        3.0 * self.material.bulk_modulus() * self.linear_coeff
            - 4.0 * self.material.shear_modulus() * self.decay_coeff / (r * r * r)
    }
}

/// Solved displacement field of the shell-in-matrix (or bare cavity) problem.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    shell: Option<Region>,
    matrix: Region,
    interface_radius: f64,
    inner_radius: f64,
    applied_pressure: f64,
    inner_pressure: f64,
}

impl LinearSolution {
    /// Radial displacement at `r`; the shell field applies below the
    /// interface radius, the matrix field above.
    pub fn displacement(&self, r: f64) -> f64 {
        match &self.shell {
            Some(shell) if r < self.interface_radius => shell.displacement(r),
            _ => self.matrix.displacement(r),
        }
    }

    /// Radial stress at `r` (compression negative).
    pub fn radial_stress(&self, r: f64) -> f64 {
        match &self.shell {
            Some(shell) if r < self.interface_radius => shell.radial_stress(r),
            _ => self.matrix.radial_stress(r),
        }
    }

    /// Radial stress evaluated with the matrix-side field, valid at and
    /// beyond the interface.
    pub fn matrix_radial_stress(&self, r: f64) -> f64 {
        self.matrix.radial_stress(r)
    }

    /// Shell coefficients `(a_s, b_s)` of `u = a r + b / r^2`, absent for the
    /// bare cavity.
    pub fn shell_coefficients(&self) -> Option<(f64, f64)> {
        self.shell.as_ref().map(|s| (s.linear_coeff, s.decay_coeff))
    }

    /// Matrix coefficients `(a_m, b_m)`.
    pub fn matrix_coefficients(&self) -> (f64, f64) {
        (self.matrix.linear_coeff, self.matrix.decay_coeff)
    }

    pub fn interface_radius(&self) -> f64 {
        self.interface_radius
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn applied_pressure(&self) -> f64 {
        self.applied_pressure
    }

    pub fn inner_pressure(&self) -> f64 {
        self.inner_pressure
    }
}

/// Solves the two-region problem: shell on `[A-H, A]`, matrix on `[A, inf)`,
/// far-field pressure `p` and inner surface traction `-p_in`.
pub fn solve_shell_in_matrix(
    geometry: &ShellGeometry,
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
    pressure: f64,
    inner_pressure: f64,
) -> Result<LinearSolution> {
    let a = geometry.outer_radius();
    let h = geometry.thickness();
    if !(h > 0.0 && h < a) {
        return Err(Error::InvalidGeometry(format!(
            "two-region solve needs 0 < H < A, got H = {h}, A = {a}"
        )));
    }
    let ri = geometry.inner_radius();

    let (ks, ms) = (shell.bulk_modulus(), shell.shear_modulus());
    let (km, mm) = (matrix.bulk_modulus(), matrix.shear_modulus());

    // Unknowns x = [a_s, b_s, a_m, b_m]. Stress rows are scaled by the
    // respective 3*kappa to keep the system well conditioned.
    let ri3 = ri * ri * ri;
    let a3 = a * a * a;
    let system = Matrix4::new(
        // sigma_rr^s(ri) = -p_in
        1.0,
        -4.0 * ms / (3.0 * ks * ri3),
        0.0,
        0.0,
        // far field: a_m = -p / (3 kappa_m)
        0.0,
        0.0,
        1.0,
        0.0,
        // displacement continuity at A
        a,
        1.0 / (a * a),
        -a,
        -1.0 / (a * a),
        // radial stress continuity at A
        ks / km,
        -4.0 * ms / (3.0 * km * a3),
        -1.0,
        4.0 * mm / (3.0 * km * a3),
    );
    let rhs = Vector4::new(
        -inner_pressure / (3.0 * ks),
        -pressure / (3.0 * km),
        0.0,
        0.0,
    );

    let solution = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Solver("singular shell/matrix system".into()))?;

    Ok(LinearSolution {
        shell: Some(Region {
            material: *shell,
            linear_coeff: solution[0],
            decay_coeff: solution[1],
        }),
        matrix: Region {
            material: *matrix,
            linear_coeff: solution[2],
            decay_coeff: solution[3],
        },
        interface_radius: a,
        inner_radius: ri,
        applied_pressure: pressure,
        inner_pressure,
    })
}

/// Bare pressurized cavity of unit radius in an unbounded matrix:
/// `a_m = -p/(3 kappa)`, `b_m` fixed by `sigma_rr(A) = -p_in`, so
/// `u_r(A)/A = -p/(3 kappa) + (p_in - p)/(4 mu)`.
pub fn solve_cavity(
    matrix: &ElasticMaterial,
    pressure: f64,
    inner_pressure: f64,
) -> Result<LinearSolution> {
    let a = 1.0;
    let km = matrix.bulk_modulus();
    let mm = matrix.shear_modulus();
    let linear_coeff = -pressure / (3.0 * km);
    let decay_coeff = a * a * a * (inner_pressure - pressure) / (4.0 * mm);
    Ok(LinearSolution {
        shell: None,
        matrix: Region {
            material: *matrix,
            linear_coeff,
            decay_coeff,
        },
        interface_radius: a,
        inner_radius: a,
        applied_pressure: pressure,
        inner_pressure,
    })
}

/// Routes to the two-region solve, or to the bare cavity when the shell is
/// thinner than [`CAVITY_RATIO_THRESHOLD`].
pub fn solve_prebuckling(
    geometry: &ShellGeometry,
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
    pressure: f64,
    inner_pressure: f64,
) -> Result<LinearSolution> {
    if geometry.ratio() < CAVITY_RATIO_THRESHOLD {
        solve_cavity(matrix, pressure, inner_pressure)
    } else {
        solve_shell_in_matrix(geometry, shell, matrix, pressure, inner_pressure)
    }
}

/// Relative volume change `1 - ((S + u(S))/S)^3` of a composite sphere of
/// undeformed radius `S`.
pub fn prebuckle_volume_change(solution: &LinearSolution, outer_radius: f64) -> Result<f64> {
    if outer_radius < solution.interface_radius {
        return Err(Error::Domain(format!(
            "composite sphere radius {outer_radius} lies inside the microsphere"
        )));
    }
    let deformed = outer_radius + solution.displacement(outer_radius);
    if !(deformed > 0.0) {
        return Err(Error::UnphysicalDeformation(format!(
            "deformed composite sphere radius {deformed} is not positive"
        )));
    }
    let stretch = deformed / outer_radius;
    Ok(1.0 - stretch * stretch * stretch)
}

/// Residual pressure `-sigma_rr^m(A)` that the shell exerts on the matrix at
/// its critical pressure, used as the inner traction of the post-buckling
/// cavity. The pre-buckling solve holds the interior at zero gauge pressure.
pub fn residual_shell_pressure(
    geometry: &ShellGeometry,
    shell: &ElasticMaterial,
    matrix: &ElasticMaterial,
    critical_pressure: f64,
) -> Result<f64> {
    let solution = solve_prebuckling(geometry, shell, matrix, critical_pressure, 0.0)?;
    Ok(-solution.matrix_radial_stress(geometry.outer_radius()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn geometry(xhat: f64) -> ShellGeometry {
        ShellGeometry::from_mid_ratio(xhat).unwrap()
    }

    #[test]
    fn unloaded_body_is_undeformed() {
        let sol = solve_shell_in_matrix(
            &geometry(0.01),
            &presets::stiff_shell(),
            &presets::rubber_matrix(),
            0.0,
            0.0,
        )
        .unwrap();
        let (a_s, b_s) = sol.shell_coefficients().unwrap();
        let (a_m, b_m) = sol.matrix_coefficients();
        for c in [a_s, b_s, a_m, b_m] {
            assert!(c.abs() < 1e-30, "coefficient {c}");
        }
        assert_eq!(sol.displacement(1.5), 0.0);
    }

    #[test]
    fn homogeneous_compression_when_shell_equals_matrix() {
        // Inner surface loaded with -p as well: uniform hydrostatic state
        // u_r = -p r / (3 kappa) throughout.
        let m = presets::rubber_matrix();
        let p = 2.0e5;
        let sol = solve_shell_in_matrix(&geometry(0.2), &m, &m, p, p).unwrap();
        let expected = -p / (3.0 * m.bulk_modulus());
        for r in [0.95, 1.0, 1.7, 4.0] {
            let u = sol.displacement(r);
            assert!(
                (u - expected * r).abs() < 1e-12 * expected.abs() * r,
                "u({r}) = {u}, expected {}",
                expected * r
            );
            assert!((sol.radial_stress(r) + p).abs() < 1e-9 * p);
        }
    }

    #[test]
    fn continuity_at_interface() {
        let shell = presets::stiff_shell();
        let matrix = presets::rubber_matrix();
        let p = 7.0e5;
        let sol = solve_shell_in_matrix(&geometry(0.01), &shell, &matrix, p, 0.0).unwrap();
        let a = sol.interface_radius();
        let shell_side = sol.displacement(a * (1.0 - 1e-15));
        let matrix_side = sol.displacement(a);
        assert!((shell_side - matrix_side).abs() <= 1e-9 * a);

        let shell_stress = sol.radial_stress(a * (1.0 - 1e-15));
        let matrix_stress = sol.matrix_radial_stress(a);
        assert!((shell_stress - matrix_stress).abs() <= 1e-9 * p);

        // Inner traction condition.
        let ri = sol.inner_radius();
        assert!((sol.radial_stress(ri) - 0.0).abs() <= 1e-9 * p);
    }

    #[test]
    fn shell_keeps_interface_displacement_small() {
        // At the critical pressure of an X = 0.01 shell the scaled interface
        // displacement stays below ~0.02, unlike the bare cavity.
        let shell = presets::stiff_shell();
        let matrix = presets::rubber_matrix();
        let g = ShellGeometry::from_ratio(0.01).unwrap();
        let table =
            crate::buckling::build_buckling_table(&shell, &matrix, 2.0, 1.0e4, 256).unwrap();
        let pc = match table.critical_pressure(g.mid_ratio()).unwrap() {
            crate::buckling::CriticalPressure::Buckles(p) => p,
            other => panic!("expected buckling pressure, got {other:?}"),
        };
        let sol = solve_shell_in_matrix(&g, &shell, &matrix, pc, 0.0).unwrap();
        let u_scaled = sol.displacement(1.0).abs();
        assert!(u_scaled < 0.02, "u(A)/A = {u_scaled}");

        let cavity = solve_cavity(&matrix, pc, 0.0).unwrap();
        assert!(
            sol.displacement(1.0).abs() < cavity.displacement(1.0).abs(),
            "shell must stiffen the response"
        );
    }

    #[test]
    fn cavity_uniform_compression() {
        let m = presets::rubber_matrix();
        let p = 1.0e6;
        let sol = solve_cavity(&m, p, p).unwrap();
        assert!((sol.displacement(1.0) + p / (3.0 * m.bulk_modulus())).abs() < 1e-20);
    }

    #[test]
    fn cavity_incompressible_limit_slope() {
        // As kappa -> inf with p_in = 0: u(A)/A -> -p/(4 mu).
        let m = ElasticMaterial::new(1.0e16, 1.2e6).unwrap();
        let p = 4.0 * 1.2e6 * 0.1;
        let sol = solve_cavity(&m, p, 0.0).unwrap();
        let expected = -p / (4.0 * m.shear_modulus());
        assert!((sol.displacement(1.0) - expected).abs() < 1e-5 * expected.abs());
    }

    #[test]
    fn cavity_zero_load() {
        let sol = solve_cavity(&presets::rubber_matrix(), 0.0, 0.0).unwrap();
        assert_eq!(sol.displacement(2.0), 0.0);
        assert_eq!(sol.radial_stress(2.0), 0.0);
    }

    #[test]
    fn cavity_closed_form_oracle() {
        let m = presets::rubber_matrix();
        for (p, p_in) in [(3.0e5, 0.0), (1.0e6, 2.0e5), (5.0e4, 5.0e4), (0.0, 1.0e4)] {
            let sol = solve_cavity(&m, p, p_in).unwrap();
            let expected = -p / (3.0 * m.bulk_modulus()) + (p_in - p) / (4.0 * m.shear_modulus());
            assert!(
                (sol.displacement(1.0) - expected).abs() <= 1e-14 * expected.abs().max(1e-20),
                "p = {p}, p_in = {p_in}"
            );
            assert!((sol.radial_stress(1.0) + p_in).abs() <= 1e-9 * p.max(p_in).max(1.0));
        }
    }

    #[test]
    fn volume_change_examples() {
        // Uniform compression tuned so u(S)/S = -0.01.
        let m = presets::rubber_matrix();
        let p = 0.03 * m.bulk_modulus();
        let sol = solve_cavity(&m, p, p).unwrap();
        let dv = prebuckle_volume_change(&sol, 3.0).unwrap();
        assert!((dv - 0.029701).abs() < 1e-12, "dv = {dv}");

        let unloaded = solve_cavity(&m, 0.0, 0.0).unwrap();
        assert_eq!(prebuckle_volume_change(&unloaded, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn volume_change_monotone_in_pressure() {
        let shell = presets::stiff_shell();
        let matrix = presets::rubber_matrix();
        let g = geometry(0.01);
        let s = 0.05f64.powf(-1.0 / 3.0);
        let mut prev = 0.0;
        for i in 1..=20 {
            let p = 1.2e6 * i as f64 / 20.0;
            let sol = solve_shell_in_matrix(&g, &shell, &matrix, p, 0.0).unwrap();
            let dv = prebuckle_volume_change(&sol, s).unwrap();
            assert!(dv > prev, "dv not increasing at p = {p}");
            prev = dv;
        }
    }

    #[test]
    fn equilibrium_residual_vanishes() {
        // u = a r + b / r^2 satisfies u'' + 2 u'/r - 2 u/r^2 = 0 identically;
        // check by direct substitution at many radii.
        let sol = solve_shell_in_matrix(
            &geometry(0.05),
            &presets::stiff_shell(),
            &presets::rubber_matrix(),
            5.0e5,
            1.0e4,
        )
        .unwrap();
        let (a_m, b_m) = sol.matrix_coefficients();
        for i in 0..100 {
            let r = 1.0 + 9.0 * i as f64 / 99.0;
            let upp = 6.0 * b_m / r.powi(4);
            let up = a_m - 2.0 * b_m / r.powi(3);
            let u = a_m * r + b_m / (r * r);
            let residual = upp + 2.0 * up / r - 2.0 * u / (r * r);
            let scale = upp.abs() + (2.0 * up / r).abs() + (2.0 * u / (r * r)).abs();
            assert!(residual.abs() <= 1e-14 * scale.max(1e-300), "r = {r}");
        }
    }

    #[test]
    fn residual_pressure_vanishes_without_shell() {
        let g = ShellGeometry::from_mid_ratio(0.0).unwrap();
        let pin = residual_shell_pressure(
            &g,
            &presets::stiff_shell(),
            &presets::rubber_matrix(),
            7.0e5,
        )
        .unwrap();
        assert_eq!(pin, 0.0);
    }

    #[test]
    fn residual_pressure_rigid_shell_limit() {
        // mu_s -> inf clamps u(A) = 0, giving p_in^s -> p (3 kappa + 4 mu)/(3 kappa).
        let matrix = presets::rubber_matrix();
        let rigid = ElasticMaterial::new(1.0e18, 1.0e18).unwrap();
        let p = 7.0e5;
        let pin = residual_shell_pressure(&geometry(0.01), &rigid, &matrix, p).unwrap();
        let expected = p * (3.0 * matrix.bulk_modulus() + 4.0 * matrix.shear_modulus())
            / (3.0 * matrix.bulk_modulus());
        assert!(
            (pin - expected).abs() < 1e-6 * expected,
            "pin = {pin}, expected {expected}"
        );
    }

    #[test]
    fn residual_pressure_bracketed_by_critical_pressure() {
        let shell = presets::stiff_shell();
        let matrix = presets::rubber_matrix();
        let table =
            crate::buckling::build_buckling_table(&shell, &matrix, 2.0, 1.0e4, 256).unwrap();
        let xhat = 0.01;
        let pc = match table.critical_pressure(xhat).unwrap() {
            crate::buckling::CriticalPressure::Buckles(p) => p,
            other => panic!("unexpected {other:?}"),
        };
        let pin = residual_shell_pressure(&geometry(xhat), &shell, &matrix, pc).unwrap();
        assert!(pin > 0.0 && pin < pc, "pin = {pin}, pc = {pc}");
    }

    #[test]
    fn rejects_degenerate_geometry() {
        let res = solve_shell_in_matrix(
            &ShellGeometry::from_mid_ratio(0.0).unwrap(),
            &presets::stiff_shell(),
            &presets::rubber_matrix(),
            1.0e5,
            0.0,
        );
        assert!(res.is_err());
    }
}
