//! The deformation maps `φ_n` and the two-parameter product
//! `f∘g = f⋆g + Σ_{n≥1} uⁿ φ_n(f, g) Rⁿ`.

mod closed_form;
mod dunkl;
mod kernels;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::exact::{twist, OrbifoldElement, ParamPoly, Scalar, YPoly};
use crate::kernels::KernelEvaluator;
use crate::weyl::moyal_star;

pub use closed_form::{
    phi1_closed_form_table, phi1_contraction_amplitudes, phi_commutative_cocycle_data,
    ClosedFormTable,
};
pub use dunkl::{dunkl_product, DunklElement, DunklPoly};
pub use kernels::{
    build_phi_kernel, hpt_recurrence, phi1_simplex_kernel, phi1_square_kernel,
    phi2_explicit_kernel, HptCoefficients, PhiParameterization,
};

/// Rescaling of `u` that puts the raw integrals in the normalization `[y_α, y_β]_∘ = -2ε_{αβ}(ħ + uR)`.
///
/// `φ_n = κⁿ · (raw kernel integral)`.
pub fn calibration() -> Scalar {
    Scalar::new(1, 2)
}

type Registry = RwLock<HashMap<(usize, PhiParameterization), Arc<KernelEvaluator>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(Default::default)
}

/// Shared evaluator for the raw `φ_n` kernel; built once per `(n, param)`.
pub fn phi_evaluator(n: usize, param: PhiParameterization) -> Result<Arc<KernelEvaluator>> {
    if let Some(e) = registry().read().unwrap().get(&(n, param)) {
        return Ok(e.clone());
    }
    let ev = Arc::new(KernelEvaluator::new(build_phi_kernel(n, param)?));
    let mut reg = registry().write().unwrap();
    Ok(reg.entry((n, param)).or_insert(ev).clone())
}

/// `φ_n(f, g)` from the chosen parameterization, calibrated. `φ_0` is the Moyal product.
pub fn phi_with(param: PhiParameterization, n: usize, f: &YPoly, g: &YPoly) -> Result<YPoly> {
    if n == 0 {
        return Ok(moyal_star(f, g));
    }
    if n as u32 > min_degree(f, g) {
        return Ok(YPoly::zero());
    }
    let raw = phi_evaluator(n, param)?.integrate(&[f.clone(), g.clone()])?;
    Ok(raw.scale(&calibration().pow(n as u32)))
}

/// `φ_n(f, g)` in the `(u, v)` parameterization.
pub fn phi(n: usize, f: &YPoly, g: &YPoly) -> YPoly {
    phi_with(PhiParameterization::UV, n, f, g).expect("n >= 1 and two arguments")
}

/// `φ_n` through the nested-homotopy recurrence.
pub fn phi_via_hpt(n: usize, f: &YPoly, g: &YPoly) -> Result<YPoly> {
    phi_with(PhiParameterization::HPT, n, f, g)
}

/// Second-order map from the explicit integrand over the raw times `t_1..t_4`.
pub fn phi2_explicit(f: &YPoly, g: &YPoly) -> Result<YPoly> {
    static EV: OnceLock<KernelEvaluator> = OnceLock::new();
    let ev = EV.get_or_init(|| KernelEvaluator::new(phi2_explicit_kernel()));
    Ok(ev.integrate(&[f.clone(), g.clone()])?.scale(&calibration().pow(2)))
}

/// First-order map from the unit-square integrand.
pub fn phi1_square(f: &YPoly, g: &YPoly) -> Result<YPoly> {
    static EV: OnceLock<KernelEvaluator> = OnceLock::new();
    let ev = EV.get_or_init(|| KernelEvaluator::new(phi1_square_kernel()));
    Ok(ev.integrate(&[f.clone(), g.clone()])?.scale(&calibration()))
}

/// First-order map from the `Δ_2` integrand.
pub fn phi1_simplex(f: &YPoly, g: &YPoly) -> Result<YPoly> {
    static EV: OnceLock<KernelEvaluator> = OnceLock::new();
    let ev = EV.get_or_init(|| KernelEvaluator::new(phi1_simplex_kernel()));
    Ok(ev.integrate(&[f.clone(), g.clone()])?.scale(&calibration()))
}

fn min_degree(f: &YPoly, g: &YPoly) -> u32 {
    match (f.total_degree(), g.total_degree()) {
        (Some(a), Some(b)) => a.min(b),
        _ => 0,
    }
}

/// The deformed product on graded elements:
/// `(f Rᵃ)∘(g Rᵇ) = Σ_n uⁿ φ_n(f, R^a g R^a) R^{n+a+b}`.
pub fn circle_product(a: &OrbifoldElement, b: &OrbifoldElement) -> OrbifoldElement {
    let mut parts = [YPoly::zero(), YPoly::zero()];
    for (ra, f) in [(0usize, &a.part0), (1, &a.part1)] {
        if f.is_zero() {
            continue;
        }
        for (rb, g) in [(0usize, &b.part0), (1, &b.part1)] {
            if g.is_zero() {
                continue;
            }
            let g = if ra == 1 { crate::exact::twist_poly(g) } else { g.clone() };
            for n in 0..=min_degree(f, &g) as usize {
                let term = phi(n, f, &g);
                if term.is_zero() {
                    continue;
                }
                parts[(n + ra + rb) % 2] += &term.scale_param(&ParamPoly::u_pow(n as u32));
            }
        }
    }
    let [p0, p1] = parts;
    OrbifoldElement::new(p0, p1)
}

/// `a∘b - b∘a`.
pub fn circle_commutator(a: &OrbifoldElement, b: &OrbifoldElement) -> OrbifoldElement {
    &circle_product(a, b) - &circle_product(b, a)
}

/// `R a R`.
pub fn conjugate_by_r(a: &OrbifoldElement) -> OrbifoldElement {
    twist(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::crossed_star;
    use proptest::prelude::*;

    fn el(f: YPoly) -> OrbifoldElement {
        OrbifoldElement::from_poly(f)
    }

    fn arb_graded() -> impl Strategy<Value = OrbifoldElement> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4, 0u32..2), 1..3).prop_map(|ts| {
            OrbifoldElement::from_terms(ts.into_iter().map(|(a, b, c, r)| crate::exact::Term {
                coeff: Scalar::from_int(c),
                hbar_pow: 0,
                u_pow: 0,
                y1_pow: a,
                y2_pow: b,
                r_pow: r,
            }))
        })
    }

    #[test]
    fn deformed_commutator() {
        let c = circle_commutator(&el(YPoly::y1()), &el(YPoly::y2()));
        let expect = OrbifoldElement::new(
            YPoly::from_param(ParamPoly::hbar().scale(&Scalar::from_int(-2))),
            YPoly::from_param(ParamPoly::u().scale(&Scalar::from_int(-2))),
        );
        assert_eq!(c, expect);
        assert_eq!(c.to_string(), "-2*h - 2*u*R");
        let d = &phi(1, &YPoly::y1(), &YPoly::y2()) - &phi(1, &YPoly::y2(), &YPoly::y1());
        assert_eq!(d, YPoly::from_scalar_const(Scalar::from_int(-2)));
    }

    #[test]
    fn low_degree_vanishing() {
        assert!(phi(2, &YPoly::y1(), &YPoly::monomial(1, 1)).is_zero());
        assert!(phi(1, &YPoly::one(), &YPoly::monomial(2, 1)).is_zero());
        let y1 = el(YPoly::y1());
        assert_eq!(circle_product(&y1, &y1), crossed_star(&y1, &y1));
    }

    #[test]
    fn parameterizations_agree_low_order() {
        let mons: Vec<YPoly> = (0..=3u32)
            .flat_map(|d| (0..=d).map(move |a| YPoly::monomial(a, d - a)))
            .collect();
        for n in 1..=2 {
            for f in &mons {
                for g in &mons {
                    let uv = phi(n, f, g);
                    for p in [PhiParameterization::W, PhiParameterization::HPT] {
                        assert_eq!(phi_with(p, n, f, g).unwrap(), uv, "{p:?} n={n} {f:?} {g:?}");
                    }
                    if n == 1 {
                        assert_eq!(phi1_square(f, g).unwrap(), uv);
                        assert_eq!(phi1_simplex(f, g).unwrap(), uv);
                    } else {
                        assert_eq!(phi2_explicit(f, g).unwrap(), uv);
                    }
                }
            }
        }
        let (a, b) = (YPoly::monomial(2, 0), YPoly::monomial(0, 2));
        assert_eq!(phi_via_hpt(2, &a, &b).unwrap(), phi(2, &a, &b));
    }

    proptest! {
        #[test]
        fn u_zero_is_crossed_product(a in arb_graded(), b in arb_graded()) {
            let zero = Scalar::zero();
            let c = circle_product(&a, &b).evaluate_params(None, Some(&zero));
            prop_assert_eq!(c, crossed_star(&a, &b));
        }

        #[test]
        fn r_conjugation_covariance(a in arb_graded(), b in arb_graded()) {
            let lhs = conjugate_by_r(&circle_product(&a, &b));
            let rhs = circle_product(&conjugate_by_r(&a), &conjugate_by_r(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associativity_random(a in arb_graded(), b in arb_graded(), c in arb_graded()) {
            let l = circle_product(&circle_product(&a, &b), &c);
            let r = circle_product(&a, &circle_product(&b, &c));
            prop_assert_eq!(l, r);
        }
    }
}
