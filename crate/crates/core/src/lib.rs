//! Exact symbolic engine for the two-parameter deformation of the Weyl algebra
//! extended by the reflection `R` (`R y R = -y`, `R² = 1`).
//!
//! All arithmetic is over exact rationals; `ħ` and `u` stay formal unless substituted.
//!
//! ```
//! use orbistar_core::{circle_product, OrbifoldElement, YPoly};
//!
//! let y1 = OrbifoldElement::from_poly(YPoly::y1());
//! let y2 = OrbifoldElement::from_poly(YPoly::y2());
//! let c = &circle_product(&y1, &y2) - &circle_product(&y2, &y1);
//! assert_eq!(c.to_string(), "-2*h - 2*u*R");
//! ```

pub mod ainfinity;
pub mod deformation;
pub mod error;
pub mod exact;
pub mod integration;
pub mod kernels;
pub mod verify;
pub mod weyl;

pub use ainfinity::{build_mn_kernel, mn, MultiKernel};
pub use deformation::{
    build_phi_kernel, circle_product, dunkl_product, phi, phi_via_hpt, DunklElement, DunklPoly,
    PhiParameterization,
};
pub use error::{Error, Result};
pub use exact::{twist, Coefficient, MultiExp, OrbifoldElement, ParamPoly, Scalar, Term, YPoly};
pub use integration::{CellDomain, ExpSum, IntegrandPoly};
pub use kernels::{kernel_apply, kernel_integrate, GaussianKernel};
pub use weyl::{crossed_star, moyal_star};
