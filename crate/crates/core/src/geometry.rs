//! Microsphere geometry and the composite-sphere unit cell.
//!
//! All lengths are normalized to the undeformed outer radius `A = 1`; the
//! problem is scale invariant, so absolute radii never enter results.

use crate::distribution::GammaDistribution;
use crate::error::{Error, Result};
use crate::material::{ElasticMaterial, GasLaw, MatrixModel};

/// Thin spherical shell geometry: outer radius `A`, thickness `H`,
/// thickness-to-outer-radius ratio `X = H/A` and thickness-to-mid-radius
/// ratio `Xhat = H/(A - H/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellGeometry {
    outer_radius: f64,
    thickness: f64,
}

impl ShellGeometry {
    /// Geometry from the thickness-to-mid-radius ratio `Xhat` in [0, 2],
    /// with the outer radius normalized to 1.
    pub fn from_mid_ratio(mid_ratio: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&mid_ratio) {
            return Err(Error::InvalidGeometry(format!(
                "mid-surface thickness ratio must lie in [0, 2], got {mid_ratio}"
            )));
        }
        let ratio = mid_ratio / (1.0 + mid_ratio / 2.0);
        Ok(Self {
            outer_radius: 1.0,
            thickness: ratio,
        })
    }

    /// Geometry from the thickness-to-outer-radius ratio `X` in [0, 1].
    pub fn from_ratio(ratio: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&ratio) {
            return Err(Error::InvalidGeometry(format!(
                "thickness ratio must lie in [0, 1], got {ratio}"
            )));
        }
        Ok(Self {
            outer_radius: 1.0,
            thickness: ratio,
        })
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn inner_radius(&self) -> f64 {
        self.outer_radius - self.thickness
    }

    /// `X = H / A`.
    pub fn ratio(&self) -> f64 {
        self.thickness / self.outer_radius
    }

    /// Mid-surface radius `A - H/2`.
    pub fn mid_radius(&self) -> f64 {
        self.outer_radius - self.thickness / 2.0
    }

    /// `Xhat = H / (A - H/2) = X / (1 - X/2)`.
    pub fn mid_ratio(&self) -> f64 {
        let x = self.ratio();
        x / (1.0 - x / 2.0)
    }
}

/// One microsphere composite: materials, matrix model, gas law, volume
/// fraction and the distribution of shell thickness ratios.
#[derive(Debug, Clone)]
pub struct CompositeSpec {
    pub volume_fraction: f64,
    pub shell_material: ElasticMaterial,
    pub matrix_material: ElasticMaterial,
    pub matrix_model: MatrixModel,
    pub gas_law: GasLaw,
    pub distribution: GammaDistribution,
}

impl CompositeSpec {
    pub fn new(
        volume_fraction: f64,
        shell_material: ElasticMaterial,
        matrix_material: ElasticMaterial,
        matrix_model: MatrixModel,
        gas_law: GasLaw,
        distribution: GammaDistribution,
    ) -> Result<Self> {
        if !(volume_fraction > 0.0 && volume_fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "volume fraction must lie in (0, 1), got {volume_fraction}"
            )));
        }
        matrix_model.validate()?;
        gas_law.validate()?;
        Ok(Self {
            volume_fraction,
            shell_material,
            matrix_material,
            matrix_model,
            gas_law,
            distribution,
        })
    }

    /// Outer radius `S = A Phi^{-1/3} > A` of the composite sphere holding
    /// one microsphere at the prescribed volume fraction.
    pub fn fictitious_radius(&self) -> f64 {
        self.volume_fraction.powf(-1.0 / 3.0)
    }
}
