//! Material descriptions: isotropic linear moduli, hyperelastic matrix
//! models, and the gas law inside the microspheres.

use crate::error::{Error, Result};

/// Isotropic linear elastic material given by bulk and shear moduli (Pa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticMaterial {
    bulk_modulus: f64,
    shear_modulus: f64,
}

/// Moduli derived from `(kappa, mu)`:
/// `E = 9 kappa mu / (3 kappa + mu)`, `nu = (3 kappa - 2 mu) / (2 (3 kappa + mu))`,
/// `lambda = kappa - 2 mu / 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedModuli {
    pub youngs_modulus: f64,
    pub poissons_ratio: f64,
    pub lame_lambda: f64,
}

impl ElasticMaterial {
    pub fn new(bulk_modulus: f64, shear_modulus: f64) -> Result<Self> {
        if !(bulk_modulus > 0.0) || !bulk_modulus.is_finite() {
            return Err(Error::InvalidMaterial(format!(
                "bulk modulus must be positive and finite, got {bulk_modulus}"
            )));
        }
        if !(shear_modulus > 0.0) || !shear_modulus.is_finite() {
            return Err(Error::InvalidMaterial(format!(
                "shear modulus must be positive and finite, got {shear_modulus}"
            )));
        }
        Ok(Self {
            bulk_modulus,
            shear_modulus,
        })
    }

    /// Reconstructs `(kappa, mu)` from Young's modulus and Poisson's ratio.
    pub fn from_young_poisson(youngs_modulus: f64, poissons_ratio: f64) -> Result<Self> {
        if !(youngs_modulus > 0.0) {
            return Err(Error::InvalidMaterial(format!(
                "Young's modulus must be positive, got {youngs_modulus}"
            )));
        }
        if !(poissons_ratio > -1.0 && poissons_ratio < 0.5) {
            return Err(Error::InvalidMaterial(format!(
                "Poisson's ratio must lie in (-1, 0.5), got {poissons_ratio}"
            )));
        }
        let kappa = youngs_modulus / (3.0 * (1.0 - 2.0 * poissons_ratio));
        let mu = youngs_modulus / (2.0 * (1.0 + poissons_ratio));
        Self::new(kappa, mu)
    }

    pub fn bulk_modulus(&self) -> f64 {
        self.bulk_modulus
    }

    pub fn shear_modulus(&self) -> f64 {
        self.shear_modulus
    }

    pub fn youngs_modulus(&self) -> f64 {
        9.0 * self.bulk_modulus * self.shear_modulus
            / (3.0 * self.bulk_modulus + self.shear_modulus)
    }

    pub fn poissons_ratio(&self) -> f64 {
        (3.0 * self.bulk_modulus - 2.0 * self.shear_modulus)
            / (2.0 * (3.0 * self.bulk_modulus + self.shear_modulus))
    }

    pub fn lame_lambda(&self) -> f64 {
        self.bulk_modulus - 2.0 * self.shear_modulus / 3.0
    }

    pub fn derived(&self) -> DerivedModuli {
        DerivedModuli {
            youngs_modulus: self.youngs_modulus(),
            poissons_ratio: self.poissons_ratio(),
            lame_lambda: self.lame_lambda(),
        }
    }
}

/// Pressure-volume law of the gas sealed inside a microsphere.
///
/// Pressures are relative to atmospheric, so the undeformed state carries
/// zero gauge pressure under either variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GasLaw {
    /// Gas pressure pinned at atmospheric regardless of volume.
    ConstantAtmospheric,
    /// Polytropic compression `p_atm ((A / a)^{3 eta} - 1)` with heat
    /// capacity ratio `eta`.
    Polytropic {
        heat_capacity_ratio: f64,
        atmospheric_pressure: f64,
    },
}

/// Default atmospheric pressure (Pa).
pub const ATMOSPHERIC_PRESSURE: f64 = 101_325.0;

/// Heat capacity ratio of a diatomic gas.
pub const DIATOMIC_HEAT_CAPACITY_RATIO: f64 = 1.4;

impl GasLaw {
    /// Polytropic law for air at standard atmospheric pressure.
    pub fn polytropic_air() -> Self {
        GasLaw::Polytropic {
            heat_capacity_ratio: DIATOMIC_HEAT_CAPACITY_RATIO,
            atmospheric_pressure: ATMOSPHERIC_PRESSURE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let GasLaw::Polytropic {
            heat_capacity_ratio,
            atmospheric_pressure,
        } = self
        {
            if !(*heat_capacity_ratio > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "heat capacity ratio must be positive, got {heat_capacity_ratio}"
                )));
            }
            if !(*atmospheric_pressure > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "atmospheric pressure must be positive, got {atmospheric_pressure}"
                )));
            }
        }
        Ok(())
    }
}

/// Constitutive model of the matrix in the post-buckling regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixModel {
    /// Reference-only small-strain treatment of the buckled cavity.
    LinearElastic,
    NeoHookean,
    /// Incompressible Mooney-Rivlin with mixing parameter `gamma` in
    /// [-1/2, 1/2]; `gamma = 1/2` reduces to neo-Hookean.
    MooneyRivlin {
        gamma: f64,
    },
    /// Slightly compressible Horgan-Murphy material: Mooney-Rivlin at leading
    /// order plus an O(epsilon) volumetric correction, `epsilon = mu/kappa`.
    HorganMurphy {
        gamma: f64,
        epsilon: f64,
    },
}

impl MatrixModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MatrixModel::LinearElastic | MatrixModel::NeoHookean => Ok(()),
            MatrixModel::MooneyRivlin { gamma } => validate_gamma(gamma),
            MatrixModel::HorganMurphy { gamma, epsilon } => {
                validate_gamma(gamma)?;
                if !(epsilon > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "compressibility ratio epsilon must be positive, got {epsilon}"
                    )));
                }
                if epsilon > 0.1 {
                    return Err(Error::InvalidParameter(format!(
                        "compressibility ratio epsilon = {epsilon} exceeds the slightly \
                         compressible limit 0.1"
                    )));
                }
                if epsilon > 0.01 {
                    log::warn!(
                        "compressibility ratio epsilon = {epsilon} is large for a first-order \
                         correction; results may lose accuracy"
                    );
                }
                Ok(())
            }
        }
    }

    /// Mooney-Rivlin mixing parameter of the leading-order incompressible
    /// response, when the model has one.
    pub fn gamma(&self) -> Option<f64> {
        match *self {
            MatrixModel::MooneyRivlin { gamma } | MatrixModel::HorganMurphy { gamma, .. } => {
                Some(gamma)
            }
            MatrixModel::NeoHookean => Some(0.5),
            MatrixModel::LinearElastic => None,
        }
    }
}

fn validate_gamma(gamma: f64) -> Result<()> {
    if !(-0.5..=0.5).contains(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "Mooney-Rivlin gamma must lie in [-1/2, 1/2], got {gamma}"
        )));
    }
    Ok(())
}
