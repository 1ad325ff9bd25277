//! Taylor tables of the closed-form generating functions of `φ_1`, with `x = p_01`,
//! `y = p_02`, `z = p_12`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{MultiExp, MultiPoly, Scalar, YPoly};

use super::{calibration, phi};

type P = MultiPoly<Scalar>;

/// Coefficients of `x^i y^j z^k`, keyed by `[i, j, k]`; zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClosedFormTable {
    pub order: u32,
    pub coeffs: BTreeMap<[u32; 3], Scalar>,
}

impl ClosedFormTable {
    pub fn get(&self, i: u32, j: u32, k: u32) -> Scalar {
        self.coeffs.get(&[i, j, k]).cloned().unwrap_or_else(Scalar::zero)
    }
}

fn x(i: usize) -> P {
    P::var(i)
}

fn linear(c: [i64; 3]) -> P {
    (0..3).fold(P::zero(), |acc, i| &acc + &x(i).scale(&Scalar::from_int(c[i])))
}

/// Exact quotient of `p` by `x_v - r`, where `r` does not involve `x_v`.
fn divide_linear(p: &P, v: usize, r: &P) -> Result<P> {
    let mut by_power: BTreeMap<u32, P> = BTreeMap::new();
    for (k, c) in p.iter() {
        by_power
            .entry(k.get(v))
            .or_default()
            .add_term(k.with(v, 0), c.clone());
    }
    let top = match by_power.keys().next_back() {
        Some(&t) => t,
        None => return Ok(P::zero()),
    };
    let mut q = P::zero();
    let mut carry = P::zero();
    for k in (0..=top).rev() {
        let ck = by_power.remove(&k).unwrap_or_default();
        let cur = &ck + &(r * &carry);
        if k == 0 {
            if !cur.is_zero() {
                return Err(Error::InexactDivision);
            }
            break;
        }
        q += &(&cur * &P::term(MultiExp::var(v, k - 1), Scalar::one()));
        carry = cur;
    }
    Ok(q)
}

/// Homogeneous parts of `z Σ_s w_s e^{L_s} / Π(den)` for degrees `0..=order`, where each
/// denominator factor is `x_v - r`.
fn expand(
    weights: &[(P, [i64; 3])],
    denominators: &[(usize, P)],
    order: u32,
) -> Result<ClosedFormTable> {
    let z = x(2);
    let mut table = ClosedFormTable {
        order,
        coeffs: BTreeMap::new(),
    };
    for n in 0..=order {
        // numerator degree is n + #denominators, and z·w_s already supplies two
        let m = n + denominators.len() as u32 - 2;
        let mut num = P::zero();
        for (w, l) in weights {
            num += &(w * &linear(*l).pow(m));
        }
        let mut part = (&z * &num).scale(&Scalar::inv_factorial(m));
        for (v, r) in denominators {
            part = divide_linear(&part, *v, r)?;
        }
        for (k, c) in part.iter() {
            let e = [k.get(0), k.get(1), k.get(2)];
            table.coeffs.insert(e, c.clone());
        }
    }
    Ok(table)
}

/// Taylor table of `z e^{-x-y+z}/((x+y)(x-z)) + z e^{x+y+z}/((x+y)(y+z)) - z e^{x-y-z}/((x-z)(y+z))`
/// through total order `order`.
pub fn phi1_closed_form_table(order: u32) -> Result<ClosedFormTable> {
    // common denominator (x+y)(x-z)(y+z)
    let weights = [
        (linear([0, 1, 1]), [-1, -1, 1]),
        (linear([1, 0, -1]), [1, 1, 1]),
        (-linear([1, 1, 0]), [1, -1, -1]),
    ];
    let dens = [(0, -x(1)), (0, x(2)), (1, -x(2))];
    expand(&weights, &dens, order)
}

/// Taylor table of `z (e^{-x-y}/(x(x+y)) + e^{x+y}/(y(x+y)) - e^{x-y}/(xy))` through total order
/// `order`, the generating function of `φ_1` at `ħ = 0`.
pub fn phi_commutative_cocycle_data(order: u32) -> Result<ClosedFormTable> {
    // common denominator x y (x+y)
    let weights = [
        (x(1), [-1, -1, 0]),
        (x(0), [1, 1, 0]),
        (-linear([1, 1, 0]), [1, -1, 0]),
    ];
    let dens = [(0, P::zero()), (1, P::zero()), (0, -x(1))];
    expand(&weights, &dens, order)
}

/// Contraction amplitudes of the exact-integral `φ_1` at `ħ = hbar`, in the raw normalization
/// of the generating functions (the calibration is divided out).
///
/// The coefficient of `x^i y^j z^k` is read off from `φ_1(y_1^{i+k}, y_2^{j+k})`.
pub fn phi1_contraction_amplitudes(order: u32, hbar: &Scalar) -> ClosedFormTable {
    let kappa = calibration();
    let mut table = ClosedFormTable {
        order,
        coeffs: BTreeMap::new(),
    };
    for total in 0..=order {
        for k in 0..=total {
            for i in 0..=total - k {
                let j = total - k - i;
                let (a, b) = (i + k, j + k);
                let value = phi(1, &YPoly::monomial(a, 0), &YPoly::monomial(0, b))
                    .evaluate_params(Some(hbar), None);
                let c = value.coeff_or_zero(&[i, j]).constant_term();
                if c.is_zero() {
                    continue;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let amp = c * Scalar::from_int(sign)
                    / (Scalar::factorial(a) * Scalar::factorial(b) * kappa.clone());
                table.coeffs.insert([i, j, k], amp);
            }
        }
    }
    table
}
