//! Exact integration over simplex × cube cells and the vertex localization formula.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exact::{MultiExp, MultiPoly, ParamPoly, Scalar};

/// Polynomial in the integration variables with parameter coefficients.
///
/// For a [`CellDomain`] with `n_simplex = n` and `n_cube = m`, variables `0..n` are the
/// ordered simplex coordinates and `n..n+m` the cube coordinates.
pub type IntegrandPoly = MultiPoly<ParamPoly>;

/// The cell `Δ_n × [0,1]^m`, with `Δ_n = {0 < u_1 < … < u_n < 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CellDomain {
    pub n_simplex: usize,
    pub n_cube: usize,
}

impl CellDomain {
    pub fn new(n_simplex: usize, n_cube: usize) -> Self {
        CellDomain { n_simplex, n_cube }
    }

    pub fn num_vars(&self) -> usize {
        self.n_simplex + self.n_cube
    }

    /// `u1..un` for the simplex block, then `v1..vm` for the cube block.
    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.n_simplex)
            .map(|i| format!("u{i}"))
            .chain((1..=self.n_cube).map(|i| format!("v{i}")))
            .collect()
    }

    pub fn volume(&self) -> Scalar {
        Scalar::inv_factorial(self.n_simplex as u32)
    }
}

fn simplex_cache() -> &'static RwLock<HashMap<Vec<u32>, Scalar>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<u32>, Scalar>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `∫_{0<u_1<…<u_n<1} Π u_i^{a_i} du = Π_k 1/(a_1+…+a_k+k)`.
pub fn simplex_monomial_integral(exponents: &[u32]) -> Scalar {
    if let Some(v) = simplex_cache().read().unwrap().get(exponents) {
        return v.clone();
    }
    let mut acc = 0i64;
    let mut den = num_bigint::BigInt::from(1);
    for (k, &a) in exponents.iter().enumerate() {
        acc += a as i64;
        den *= acc + k as i64 + 1;
    }
    let v = Scalar::from_bigs(1.into(), den).expect("positive denominator");
    simplex_cache()
        .write()
        .unwrap()
        .insert(exponents.to_vec(), v.clone());
    v
}

/// Integral of a single monomial over the cell.
pub fn cell_monomial_integral(k: &MultiExp, dom: &CellDomain) -> Result<Scalar> {
    let e = k.as_slice();
    if e.len() > dom.num_vars() {
        return Err(Error::UnknownVariable {
            var: e.len() - 1,
            available: dom.num_vars(),
        });
    }
    let mut simplex = vec![0u32; dom.n_simplex];
    for (i, &a) in e.iter().take(dom.n_simplex).enumerate() {
        simplex[i] = a;
    }
    let mut v = simplex_monomial_integral(&simplex);
    for &a in e.iter().skip(dom.n_simplex) {
        v = v * Scalar::new(1, a as i64 + 1);
    }
    Ok(v)
}

/// Exact integral of `p` over `dom`.
pub fn integrate_cell(p: &IntegrandPoly, dom: &CellDomain) -> Result<ParamPoly> {
    let mut out = ParamPoly::zero();
    for (k, c) in p.iter() {
        let w = cell_monomial_integral(k, dom)?;
        out += &c.scale(&w);
    }
    Ok(out)
}

/// Substitutes `x_var -> scale·x_var + shift`.
pub fn affine_pullback(p: &IntegrandPoly, var: usize, scale: &Scalar, shift: &Scalar) -> IntegrandPoly {
    let image = &IntegrandPoly::var(var).scale(scale)
        + &IntegrandPoly::constant(ParamPoly::scalar(shift.clone()));
    p.substitute(var, &image)
}

/// `Σ c_i e^{s_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpSum {
    pub terms: Vec<(Scalar, Scalar)>,
}

impl ExpSum {
    /// Terms with equal exponents merged, sorted by exponent descending.
    pub fn normalized(&self) -> ExpSum {
        let mut merged: Vec<(Scalar, Scalar)> = Vec::new();
        for (c, s) in &self.terms {
            match merged.iter_mut().find(|(_, t)| t == s) {
                Some(entry) => entry.0 += c,
                None => merged.push((c.clone(), s.clone())),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged.sort_by(|a, b| b.1.cmp(&a.1));
        ExpSum { terms: merged }
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        if terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = terms.iter().map(|(c, s)| format!("({c})e^{{{s}}}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Value of `Σ a_i u_i` at vertex `k` of `Δ_n`, where the last `k` coordinates are 1.
fn vertex_value(a: &[Scalar], k: usize) -> Scalar {
    a[a.len() - k..].iter().cloned().sum()
}

/// `∫_{Δ_n} e^{Σ a_i u_i}` as a sum over the `n+1` vertices of `Δ_n`.
///
/// The weight at vertex `v` is `1/Π_{w≠v} (f(v) - f(w))`, the edges being oriented toward `v`.
pub fn localize_exponential(a: &[Scalar]) -> Result<ExpSum> {
    let n = a.len();
    let values: Vec<Scalar> = (0..=n).map(|k| vertex_value(a, k)).collect();
    let mut terms = Vec::with_capacity(n + 1);
    for (k, fv) in values.iter().enumerate() {
        let mut den = Scalar::one();
        for (j, fw) in values.iter().enumerate() {
            if j != k {
                let d = fv - fw;
                if d.is_zero() {
                    return Err(Error::DegenerateForm { vertex: k });
                }
                den *= &d;
            }
        }
        terms.push((den.recip()?, fv.clone()));
    }
    terms.sort_by(|x, y| y.1.cmp(&x.1));
    Ok(ExpSum { terms })
}

/// Taylor coefficients in `t` of `Σ c_i e^{t s_i}` for powers `0..=order`.
pub fn expsum_series_coefficients(s: &ExpSum, order: usize) -> Vec<Scalar> {
    (0..=order as u32)
        .map(|k| {
            let sum: Scalar = s.terms.iter().map(|(c, x)| c * &x.pow(k)).sum();
            sum * Scalar::inv_factorial(k)
        })
        .collect()
}

/// `∫_{Δ_n} (Σ a_i u_i)^k / k!` for `k = 0..=order`, by exact cell integration.
pub fn linear_form_moments(a: &[Scalar], order: usize) -> Vec<Scalar> {
    let dom = CellDomain::new(a.len(), 0);
    let mut form = IntegrandPoly::zero();
    for (i, c) in a.iter().enumerate() {
        form += &IntegrandPoly::var(i).scale(c);
    }
    let mut power = IntegrandPoly::one();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order as u32 {
        let v = integrate_cell(&power, &dom).expect("variables inside the domain");
        out.push(v.constant_term() * Scalar::inv_factorial(k));
        power = &power * &form;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = MultiPoly<Scalar>;

    /// Iterated integration: innermost `u_1` from 0 to `u_2`, …, `u_n` from 0 to 1.
    fn iterated_simplex(p: &P, n: usize) -> Scalar {
        let mut cur = p.clone();
        for i in 0..n {
            let mut next = P::zero();
            for (k, c) in cur.iter() {
                let e = k.get(i);
                let c = c * &Scalar::new(1, e as i64 + 1);
                let rest = k.with(i, 0);
                if i + 1 < n {
                    next.add_term(rest.with(i + 1, rest.get(i + 1) + e + 1), c);
                } else {
                    next.add_term(rest, c);
                }
            }
            cur = next;
        }
        cur.constant_term()
    }

    fn monomial(e: &[u32]) -> P {
        P::term(MultiExp::new(e.to_vec()), Scalar::one())
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_monomial_integral(&[0]), Scalar::one());
        assert_eq!(simplex_monomial_integral(&[0, 0]), Scalar::new(1, 2));
        assert_eq!(simplex_monomial_integral(&[1, 0]), Scalar::new(1, 6));
        assert_eq!(simplex_monomial_integral(&[1, 2, 0]), Scalar::new(1, 60));
        assert_eq!(iterated_simplex(&monomial(&[1, 2, 0]), 3), Scalar::new(1, 60));
    }

    #[test]
    fn cell_examples() {
        let one = IntegrandPoly::one();
        assert_eq!(
            integrate_cell(&one, &CellDomain::new(2, 1)).unwrap(),
            ParamPoly::scalar(Scalar::new(1, 2))
        );
        let uv = &IntegrandPoly::var(0) * &IntegrandPoly::var(1);
        assert_eq!(
            integrate_cell(&uv, &CellDomain::new(1, 1)).unwrap(),
            ParamPoly::scalar(Scalar::new(1, 4))
        );
        let hu = IntegrandPoly::var(0).map_coeffs(|c| c * &ParamPoly::hbar());
        assert_eq!(
            integrate_cell(&hu, &CellDomain::new(2, 0)).unwrap(),
            ParamPoly::hbar().scale(&Scalar::new(1, 6))
        );
        let bad = IntegrandPoly::var(3);
        assert!(matches!(
            integrate_cell(&bad, &CellDomain::new(1, 1)),
            Err(Error::UnknownVariable { .. })
        ));
        for n in 0..=8 {
            assert_eq!(
                integrate_cell(&one, &CellDomain::new(n, 2)).unwrap().constant_term(),
                Scalar::inv_factorial(n as u32)
            );
        }
    }

    #[test]
    fn localization_examples() {
        let s = localize_exponential(&[Scalar::one()]).unwrap();
        assert_eq!(s.to_string(), "(1)e^{1} + (-1)e^{0}");
        assert_eq!(
            expsum_series_coefficients(&s, 2),
            vec![Scalar::zero(), Scalar::one(), Scalar::new(1, 2)]
        );
        // shifted by n = 1, the series is (1/(k+1)!)_k
        let coeffs = expsum_series_coefficients(&s, 6);
        for k in 0..6u32 {
            assert_eq!(coeffs[k as usize + 1], Scalar::inv_factorial(k + 1));
        }
        assert!(matches!(
            localize_exponential(&[Scalar::zero()]),
            Err(Error::DegenerateForm { .. })
        ));
        let unit = ExpSum {
            terms: vec![(Scalar::one(), Scalar::zero())],
        };
        assert_eq!(
            expsum_series_coefficients(&unit, 2),
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()]
        );
    }

    #[test]
    fn localization_matches_moments_two_dims() {
        let a = [Scalar::from_int(1), Scalar::from_int(2)];
        let s = localize_exponential(&a).unwrap();
        let series = expsum_series_coefficients(&s, 12);
        let moments = linear_form_moments(&a, 10);
        for k in 0..=10 {
            assert_eq!(series[k + 2], moments[k]);
        }
        assert!(series[0].is_zero() && series[1].is_zero());
    }

    proptest! {
        #[test]
        fn fused_matches_iterated(exps in prop::collection::vec(0u32..5, 1..5)) {
            let n = exps.len();
            let fused = simplex_monomial_integral(&exps);
            prop_assert_eq!(fused, iterated_simplex(&monomial(&exps), n));
        }

        #[test]
        fn cube_then_simplex(terms in prop::collection::vec((prop::collection::vec(0u32..4, 4), -5i64..6), 1..6)) {
            // Δ_2 × [0,1]^2: integrate the cube block first, then the simplex block
            let dom = CellDomain::new(2, 2);
            let mut p = IntegrandPoly::zero();
            let mut staged = Scalar::zero();
            for (e, c) in &terms {
                let c = Scalar::from_int(*c);
                p.add_term(MultiExp::new(e.clone()), ParamPoly::scalar(c.clone()));
                let cube = Scalar::new(1, e[2] as i64 + 1) * Scalar::new(1, e[3] as i64 + 1);
                staged += &(c * cube * iterated_simplex(&monomial(&e[..2]), 2));
            }
            prop_assert_eq!(integrate_cell(&p, &dom).unwrap().constant_term(), staged);
        }

        #[test]
        fn localization_series(a in prop::collection::vec(-6i64..7, 1..5)) {
            let a: Vec<Scalar> = a.into_iter().map(Scalar::from_int).collect();
            match localize_exponential(&a) {
                Ok(s) => {
                    let n = a.len();
                    let series = expsum_series_coefficients(&s, 10 + n);
                    let moments = linear_form_moments(&a, 10);
                    prop_assert!(series[..n].iter().all(Scalar::is_zero));
                    for k in 0..=10 {
                        prop_assert_eq!(&series[k + n], &moments[k]);
                    }
                }
                Err(e) => {
                    let degenerate = matches!(e, Error::DegenerateForm { .. });
                    prop_assert!(degenerate);
                }
            }
        }
    }
}
