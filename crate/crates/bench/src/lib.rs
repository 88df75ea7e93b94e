//! Shared setup for the pipeline benchmarks.

use microcurve_core::buckling::{build_buckling_table, BucklingTable};
use microcurve_core::presets;
use microcurve_core::CompositeSpec;

pub fn reference_table(samples: usize) -> BucklingTable {
    build_buckling_table(
        &presets::stiff_shell(),
        &presets::rubber_matrix(),
        2.0,
        1.0e4,
        samples,
    )
    .expect("reference table builds")
}

pub fn reference_spec() -> CompositeSpec {
    presets::reference_spec().expect("reference spec is valid")
}
