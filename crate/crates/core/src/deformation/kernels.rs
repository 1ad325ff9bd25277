//! Kernel builders for the deformation maps `φ_n`.

use crate::error::{Error, Result};
use crate::exact::{ParamPoly, Scalar};
use crate::integration::{affine_pullback, CellDomain, IntegrandPoly};
use crate::kernels::GaussianKernel;

/// Which integral representation of `φ_n` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiParameterization {
    /// Simplex variables `u` and cube variables `v`.
    UV,
    /// Cube variables replaced by `w = 1 - 2v ∈ [-1, 1]`.
    W,
    /// Recurrence coefficients of the nested homotopy (`t` cube, `k` simplex).
    HPT,
}

impl PhiParameterization {
    pub const ALL: [PhiParameterization; 3] = [Self::UV, Self::W, Self::HPT];
}

pub(crate) fn var(i: usize) -> IntegrandPoly {
    IntegrandPoly::var(i)
}

pub(crate) fn int(n: i64) -> IntegrandPoly {
    IntegrandPoly::constant(ParamPoly::int(n))
}

/// `1 - 2p`.
pub(crate) fn one_minus_two(p: &IntegrandPoly) -> IntegrandPoly {
    &int(1) - &p.scale(&Scalar::from_int(2))
}

pub(crate) fn with_hbar(p: &IntegrandPoly) -> IntegrandPoly {
    p.map_coeffs(|c| c * &ParamPoly::hbar())
}

pub(crate) fn product<I: IntoIterator<Item = IntegrandPoly>>(it: I) -> IntegrandPoly {
    it.into_iter().fold(IntegrandPoly::one(), |a, b| &a * &b)
}

/// Three-slot kernel `overall · (p_12)^pre · exp[a01 p_01 + a02 p_02 + ħ a12 p_12]`.
pub(crate) fn three_slot(
    domain: CellDomain,
    pre: u32,
    a01: IntegrandPoly,
    a02: IntegrandPoly,
    a12: IntegrandPoly,
    overall: IntegrandPoly,
) -> GaussianKernel {
    GaussianKernel::new(3, domain)
        .and_then(|k| k.with_prefactor(1, 2, pre))
        .and_then(|k| k.with_exponent(0, 1, a01))
        .and_then(|k| k.with_exponent(0, 2, a02))
        .and_then(|k| k.with_exponent(1, 2, with_hbar(&a12)))
        .expect("valid three-slot pairs")
        .with_overall(overall)
}

/// Raw (uncalibrated) kernel of `φ_n`.
pub fn build_phi_kernel(n: usize, param: PhiParameterization) -> Result<GaussianKernel> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(match param {
        PhiParameterization::UV => uv_kernel(n),
        PhiParameterization::W => w_kernel(n),
        PhiParameterization::HPT => hpt_kernel(n),
    })
}

/// Variables: `u_j` at index `j-1`, `v_j` at `n+j-1`.
fn uv_kernel(n: usize) -> GaussianKernel {
    let u = |j: usize| var(j - 1);
    let v = |j: usize| var(n + j - 1);
    let w = |j: usize| one_minus_two(&v(j));
    let two = Scalar::from_int(2);

    let mut a01 = int(1);
    let mut a12 = product((1..=n).map(w));
    let a02 = a12.clone();
    for j in 1..=n {
        let uv = &u(j) * &v(j);
        a01 -= &(&uv * &product((j + 1..=n).map(w))).scale(&two);
        a12 += &(&uv * &product((1..j).map(w))).scale(&two);
    }
    let overall = &int(4i64.pow(n as u32))
        * &product((1..=n).map(|j| &v(j) * &w(j).pow((n - j) as u32)));
    three_slot(CellDomain::new(n, n), n as u32, a01, a02, a12, overall)
}

/// Written in `w_j ∈ [-1,1]` (index `n+j-1`), then pulled back along `w = 2s - 1`.
fn w_kernel(n: usize) -> GaussianKernel {
    let u = |j: usize| var(j - 1);
    let w = |j: usize| var(n + j - 1);
    let one_minus = |j: usize| &int(1) - &w(j);

    let a02 = product((1..=n).map(w));
    let mut a01 = int(1);
    let mut a12 = a02.clone();
    for j in 1..=n {
        let uw = &u(j) * &one_minus(j);
        a01 -= &(&uw * &product((j + 1..=n).map(w)));
        a12 += &(&uw * &product((1..j).map(w)));
    }
    let overall = product((1..=n).map(|j| &one_minus(j) * &w(j).pow((n - j) as u32)));

    let (two, minus_one) = (Scalar::from_int(2), Scalar::from_int(-1));
    let pull = |p: &IntegrandPoly| {
        (1..=n).fold(p.clone(), |acc, j| affine_pullback(&acc, n + j - 1, &two, &minus_one))
    };
    // ds = dw/2 on each cube factor
    let overall = &pull(&overall) * &int(2i64.pow(n as u32));
    three_slot(CellDomain::new(n, n), n as u32, pull(&a01), pull(&a02), pull(&a12), overall)
}

/// Coefficients `c_i, d_i, e_i, f_i` of the nested-homotopy form `ω_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HptCoefficients {
    pub c: IntegrandPoly,
    pub d: IntegrandPoly,
    pub e: IntegrandPoly,
    pub f: IntegrandPoly,
}

/// Runs the recurrence up to order `n`; `k_i` at index `i-1`, `t_i` at `n+i-1`.
pub fn hpt_recurrence(n: usize) -> Vec<HptCoefficients> {
    let k = |i: usize| var(i - 1);
    let t = |i: usize| var(n + i - 1);
    let mut out: Vec<HptCoefficients> = Vec::with_capacity(n);
    for i in 1..=n {
        let d_new = one_minus_two(&t(i));
        let tk = &t(i) * &k(i);
        let next = match out.last() {
            None => HptCoefficients {
                c: int(1),
                d: d_new,
                e: tk.clone(),
                f: tk,
            },
            Some(p) => HptCoefficients {
                c: &p.d * &p.c,
                d: &p.d * &d_new,
                e: &(&p.e * &d_new) + &tk,
                f: &(&tk * &p.d) + &p.f,
            },
        };
        out.push(next);
    }
    out
}

fn hpt_kernel(n: usize) -> GaussianKernel {
    let last = hpt_recurrence(n).pop().expect("n >= 1");
    let two = Scalar::from_int(2);
    let a01 = &int(1) - &last.e.scale(&two);
    let a12 = &last.d + &last.f.scale(&two);
    let overall = &(&int(4i64.pow(n as u32)) * &last.c) * &product((1..=n).map(|i| var(n + i - 1)));
    three_slot(CellDomain::new(n, n), n as u32, a01, last.d, a12, overall)
}

/// `φ_1` over the unit square: `4 p_12 ∫ t exp[p_01(1-2tt') + p_02(1-2t) + ħ p_12(1-2t+2tt')]`.
pub fn phi1_square_kernel() -> GaussianKernel {
    let (t, tp) = (var(0), var(1));
    let ttp = &t * &tp;
    let two = Scalar::from_int(2);
    three_slot(
        CellDomain::new(0, 2),
        1,
        one_minus_two(&ttp),
        one_minus_two(&t),
        &one_minus_two(&t) + &ttp.scale(&two),
        &int(4) * &t,
    )
}

/// `φ_1` over `Δ_2` with propagators `G(a, b) = 1 + 2(a - b)`.
pub fn phi1_simplex_kernel() -> GaussianKernel {
    let g = |a: &IntegrandPoly, b: &IntegrandPoly| &int(1) + &(a - b).scale(&Scalar::from_int(2));
    let zero = IntegrandPoly::zero();
    let (u1, u2) = (var(0), var(1));
    three_slot(
        CellDomain::new(2, 0),
        1,
        g(&zero, &u1),
        g(&zero, &u2),
        g(&u1, &u2),
        int(4),
    )
}

/// The explicit second-order integrand over the 4-cube in the raw homotopy times `t_1..t_4`.
pub fn phi2_explicit_kernel() -> GaussianKernel {
    let t = |i: usize| var(i - 1);
    let mono = |c: i64, idx: &[usize]| &int(c) * &product(idx.iter().map(|&i| t(i)));
    let sum = |terms: Vec<IntegrandPoly>| terms.into_iter().fold(IntegrandPoly::zero(), |a, b| &a + &b);

    let a01 = sum(vec![
        mono(-2, &[1, 2, 4]),
        mono(4, &[1, 2, 3, 4]),
        mono(-2, &[3, 4]),
        int(1),
    ]);
    let a02 = sum(vec![mono(4, &[1, 3]), mono(-2, &[1]), mono(-2, &[3]), int(1)]);
    let a12 = sum(vec![
        mono(4, &[1, 3]),
        mono(2, &[1, 2, 4]),
        mono(-4, &[1, 3, 4]),
        mono(-2, &[1]),
        mono(-2, &[3]),
        mono(2, &[3, 4]),
        int(1),
    ]);
    let overall = &mono(16, &[1, 3, 4]) * &one_minus_two(&t(1));
    three_slot(CellDomain::new(0, 4), 2, a01, a02, a12, overall)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_uv_coefficients() {
        let k = build_phi_kernel(1, PhiParameterization::UV).unwrap();
        let (u, v) = (var(0), var(1));
        let uv = &u * &v;
        let two = Scalar::from_int(2);
        assert_eq!(k.exponent_coeff(0, 1), one_minus_two(&uv));
        assert_eq!(k.exponent_coeff(0, 2), one_minus_two(&v));
        assert_eq!(
            k.exponent_coeff(1, 2),
            with_hbar(&(&one_minus_two(&v) + &uv.scale(&two)))
        );
        assert_eq!(k.overall(), &(&int(4) * &v));
        assert_eq!(k.prefactor().get(&(1, 2)), Some(&1));
        assert_eq!(k.domain(), CellDomain::new(1, 1));
    }

    #[test]
    fn hpt_recurrence_matches_closed_forms() {
        let n = 5;
        let k = |i: usize| var(i - 1);
        let t = |i: usize| var(n + i - 1);
        let w = |i: usize| one_minus_two(&t(i));
        let rec = hpt_recurrence(n);
        for i in 1..=n {
            let d = product((1..=i).map(w));
            let e = (1..=i).fold(IntegrandPoly::zero(), |acc, j| {
                &acc + &(&(&t(j) * &k(j)) * &product((j + 1..=i).map(w)))
            });
            let f = (1..=i).fold(IntegrandPoly::zero(), |acc, j| {
                &acc + &(&(&t(j) * &k(j)) * &product((1..j).map(w)))
            });
            let c = product((1..i).map(|j| w(j).pow((i - j) as u32)));
            let got = &rec[i - 1];
            assert_eq!(got.d, d, "d_{i}");
            assert_eq!(got.e, e, "e_{i}");
            assert_eq!(got.f, f, "f_{i}");
            assert_eq!(got.c, c, "c_{i}");
        }
    }

    #[test]
    fn order_zero_rejected() {
        assert_eq!(
            build_phi_kernel(0, PhiParameterization::UV),
            Err(Error::InvalidOrder(0))
        );
    }
}
