// Negated comparisons are used on purpose: `!(x > 0.0)` rejects NaN along
// with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Pressure-volume response of an elastomer filled with a dilute population
//! of gas-filled thin spherical shells.
//!
//! The model combines a linear elastic solution for the intact (pre-buckling)
//! microsphere, a buckling criterion for a spherical shell embedded in an
//! unbounded elastic matrix, finite-strain cavity mechanics for the buckled
//! (post-buckling) state, and an average over a Gamma distribution of shell
//! thickness ratios to produce the macroscopic load curve.
//!
//! ```
//! use microcurve_core::{build_buckling_table, presets, pressure_grid, CompositeCurve};
//!
//! let spec = presets::reference_spec()?;
//! let table =
//!     build_buckling_table(&spec.shell_material, &spec.matrix_material, 2.0, 1.0e4, 256)?;
//! let evaluator = CompositeCurve::new(&spec, &table);
//! let grid = pressure_grid(spec.matrix_material.shear_modulus(), 0.8, 40, None);
//! let curve = evaluator.sweep(&grid)?;
//! assert_eq!(curve.points()[0].volume_change, 0.0);
//! assert!(curve.points().last().unwrap().buckled_fraction > 0.5);
//! # Ok::<(), microcurve_core::Error>(())
//! ```

pub mod buckling;
pub mod curve;
pub mod distribution;
pub mod error;
pub mod geometry;
pub mod linear;
pub mod material;
pub mod numeric;
pub mod postbuckle;
pub mod presets;

pub use buckling::{build_buckling_table, BucklingTable, CriticalPressure, CriticalRatio};
pub use curve::{pressure_grid, CompositeCurve, LoadCurve, LoadCurvePoint, SweepOptions};
pub use distribution::GammaDistribution;
pub use error::{Error, Result};
pub use geometry::{CompositeSpec, ShellGeometry};
pub use linear::LinearSolution;
pub use material::{ElasticMaterial, GasLaw, MatrixModel};
pub use postbuckle::{CavityState, CorrectionPressure};
