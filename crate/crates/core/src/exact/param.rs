//! Polynomials in the formal deformation parameters `ħ` and `u`.

use std::fmt;

use super::poly::SparsePoly;
use super::scalar::Scalar;
use super::text::render_terms;

/// Coefficient ring of the whole crate: `Q[ħ, u]`. Exponent index 0 is `ħ`, 1 is `u`.
pub type ParamPoly = SparsePoly<[u32; 2], Scalar>;

impl SparsePoly<[u32; 2], Scalar> {
    pub fn scalar(s: Scalar) -> Self {
        Self::constant(s)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::from_int(n))
    }

    pub fn hbar() -> Self {
        Self::term([1, 0], Scalar::one())
    }

    pub fn u() -> Self {
        Self::term([0, 1], Scalar::one())
    }

    pub fn hbar_pow(k: u32) -> Self {
        Self::term([k, 0], Scalar::one())
    }

    pub fn u_pow(k: u32) -> Self {
        Self::term([0, k], Scalar::one())
    }

    /// Substitutes rational values for `ħ` and/or `u`; `None` leaves the symbol formal.
    pub fn evaluate(&self, hbar: Option<&Scalar>, u: Option<&Scalar>) -> Self {
        let mut out = Self::zero();
        for (&[h, v], c) in self.iter() {
            let mut coeff = c.clone();
            let mut key = [h, v];
            if let Some(x) = hbar {
                coeff *= &x.pow(h);
                key[0] = 0;
            }
            if let Some(x) = u {
                coeff *= &x.pow(v);
                key[1] = 0;
            }
            out.add_term(key, coeff);
        }
        out
    }

    /// Terms sorted by (u-power, ħ-power).
    pub fn sorted_terms(&self) -> Vec<([u32; 2], Scalar)> {
        let mut v: Vec<_> = self.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|([h, u], _)| (*u, *h));
        v
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|([h, u], c)| (c, vec![("h", h), ("u", u)]));
        f.write_str(&render_terms(terms))
    }
}
