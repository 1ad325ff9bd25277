//! Polynomials in the oscillator components `y1`, `y2`.

use super::param::ParamPoly;
use super::poly::SparsePoly;
use super::scalar::Scalar;

/// `Q[ħ,u][y1, y2]`; the key `[a1, a2]` is the monomial `y1^a1 y2^a2`.
pub type YPoly = SparsePoly<[u32; 2], ParamPoly>;

impl SparsePoly<[u32; 2], ParamPoly> {
    pub fn y1() -> Self {
        Self::term([1, 0], ParamPoly::one())
    }

    pub fn y2() -> Self {
        Self::term([0, 1], ParamPoly::one())
    }

    /// `y_index` for `index` in {1, 2}.
    pub fn y(index: usize) -> Self {
        if index == 1 {
            Self::y1()
        } else {
            Self::y2()
        }
    }

    pub fn monomial(a1: u32, a2: u32) -> Self {
        Self::term([a1, a2], ParamPoly::one())
    }

    pub fn from_param(p: ParamPoly) -> Self {
        Self::constant(p)
    }

    pub fn from_scalar_const(s: Scalar) -> Self {
        Self::constant(ParamPoly::scalar(s))
    }

    /// Partial derivative in `y_index`.
    pub fn partial(&self, index: usize) -> Self {
        let i = index - 1;
        Self::from_terms(self.iter().filter(|(k, _)| k[i] > 0).map(|(k, c)| {
            let mut k2 = *k;
            k2[i] -= 1;
            (k2, c.scale(&Scalar::from_int(k[i] as i64)))
        }))
    }

    /// Multiplies every monomial coefficient by a parameter polynomial.
    pub fn scale_param(&self, p: &ParamPoly) -> Self {
        self.map_coeffs(|c| c * p)
    }

    pub fn evaluate_params(&self, hbar: Option<&Scalar>, u: Option<&Scalar>) -> Self {
        self.map_coeffs(|c| c.evaluate(hbar, u))
    }
}

/// `f(c·y1, c·y2)`: a monomial of total degree `d` picks up `c^d`.
pub fn poly_scale_substitute(f: &YPoly, c: &ParamPoly) -> YPoly {
    let mut powers = vec![ParamPoly::one()];
    let mut out = YPoly::zero();
    for (k, coeff) in f.iter() {
        let d = (k[0] + k[1]) as usize;
        while powers.len() <= d {
            let next = powers.last().unwrap() * c;
            powers.push(next);
        }
        out.add_term(*k, coeff * &powers[d]);
    }
    out
}

/// `f(-y)`.
pub fn twist_poly(f: &YPoly) -> YPoly {
    YPoly::from_terms(f.iter().map(|(k, c)| {
        let c = if (k[0] + k[1]) % 2 == 1 { -c } else { c.clone() };
        (*k, c)
    }))
}

/// True when every monomial has even total degree.
pub fn is_even(f: &YPoly) -> bool {
    f.iter().all(|(k, _)| (k[0] + k[1]) % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_substitute_examples() {
        let f = YPoly::monomial(2, 0);
        assert_eq!(poly_scale_substitute(&f, &ParamPoly::one()), f);

        let g = &YPoly::y1() + &YPoly::y2();
        assert_eq!(poly_scale_substitute(&g, &ParamPoly::int(-1)), -&g);

        let h = &YPoly::monomial(1, 1) + &YPoly::one();
        let expect = &YPoly::monomial(1, 1).scale(&Scalar::from_int(4)) + &YPoly::one();
        assert_eq!(poly_scale_substitute(&h, &ParamPoly::int(2)), expect);
    }

    #[test]
    fn mixed_partials_commute() {
        let f = &(&YPoly::monomial(3, 2) + &YPoly::monomial(1, 4)).scale_param(&ParamPoly::hbar())
            + &YPoly::monomial(2, 1);
        assert_eq!(f.partial(1).partial(2), f.partial(2).partial(1));
        assert_eq!(YPoly::monomial(0, 3).partial(1), YPoly::zero());
    }
}
