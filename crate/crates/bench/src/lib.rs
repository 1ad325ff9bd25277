//! Fixtures shared by the benchmarks.

use orbistar_core::{OrbifoldElement, ParamPoly, Scalar, YPoly};

/// Dense polynomial `Σ_{a+b≤d} (a+1)/(b+1) y1^a y2^b`.
pub fn dense_poly(d: u32) -> YPoly {
    let mut p = YPoly::zero();
    for a in 0..=d {
        for b in 0..=d - a {
            p.add_term([a, b], ParamPoly::scalar(Scalar::new(a as i64 + 1, b as i64 + 1)));
        }
    }
    p
}

/// `f + g R` with both parts dense of degree `d`.
pub fn dense_element(d: u32) -> OrbifoldElement {
    OrbifoldElement::new(dense_poly(d), dense_poly(d.saturating_sub(1)))
}
