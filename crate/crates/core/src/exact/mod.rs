//! Exact scalar and polynomial arithmetic.

pub mod element;
pub mod param;
pub mod poly;
pub mod scalar;
pub mod text;
pub mod ypoly;

pub use element::{twist, OrbifoldElement, Term};
pub use param::ParamPoly;
pub use poly::{Coefficient, Monomial, MultiExp, MultiPoly, SparsePoly};
pub use scalar::Scalar;
pub use ypoly::{poly_scale_substitute, twist_poly, YPoly};
