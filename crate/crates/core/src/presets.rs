//! Parameter sets used as defaults: a thin glassy shell in a polyurethane
//! rubber host, plus the softer variants exercised by the parameter studies.

use crate::distribution::GammaDistribution;
use crate::error::Result;
use crate::geometry::CompositeSpec;
use crate::material::{ElasticMaterial, GasLaw, MatrixModel};

/// Glassy thermoplastic shell: mu = 1.26 GPa, kappa = 2.1 GPa.
pub fn stiff_shell() -> ElasticMaterial {
    ElasticMaterial::new(2.1e9, 1.26e9).expect("preset moduli are valid")
}

/// Shell an order of magnitude softer: mu = 0.126 GPa, kappa = 0.21 GPa.
pub fn soft_shell() -> ElasticMaterial {
    ElasticMaterial::new(0.21e9, 0.126e9).expect("preset moduli are valid")
}

/// Essentially incompressible rubber host: mu = 1.2 MPa, kappa = 4 GPa.
pub fn rubber_matrix() -> ElasticMaterial {
    ElasticMaterial::new(4.0e9, 1.2e6).expect("preset moduli are valid")
}

/// Slightly more compressible host: mu = 1.2 MPa, kappa = 0.4 GPa.
pub fn compressible_rubber_matrix() -> ElasticMaterial {
    ElasticMaterial::new(0.4e9, 1.2e6).expect("preset moduli are valid")
}

/// Mooney-Rivlin mixing parameter used by the reference load curve.
pub const REFERENCE_GAMMA: f64 = 1.0 / 18.0;

/// Reference shell ratio distribution: shape 8, mean 0.01.
pub fn reference_distribution() -> GammaDistribution {
    GammaDistribution::new(8.0, 0.01).expect("preset distribution is valid")
}

/// Reference composite: 5% volume fraction of stiff shells in rubber, a
/// Mooney-Rivlin matrix with gamma = 1/18 and gas held at atmospheric
/// pressure.
pub fn reference_spec() -> Result<CompositeSpec> {
    CompositeSpec::new(
        0.05,
        stiff_shell(),
        rubber_matrix(),
        MatrixModel::MooneyRivlin {
            gamma: REFERENCE_GAMMA,
        },
        GasLaw::ConstantAtmospheric,
        reference_distribution(),
    )
}
