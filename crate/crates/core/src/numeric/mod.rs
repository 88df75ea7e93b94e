//! Small numerical building blocks: polynomial roots, scalar root finding,
//! one-dimensional minimization, monotone interpolation and adaptive
//! quadrature.

pub mod cubic;
pub mod interp;
pub mod quad;
pub mod roots;

pub use cubic::cubic_real_roots;
pub use interp::MonotoneCubic;
pub use quad::{integrate, QuadResult};
pub use roots::{find_root_bracketed, golden_minimize};
