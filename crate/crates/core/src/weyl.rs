//! Moyal–Weyl star product, its crossed product with `R`, and the `sp(2)` bilinears.

use crate::error::{Error, Result};
use crate::exact::{twist, OrbifoldElement, ParamPoly, Scalar, YPoly};

/// Index conventions for `ε` and the contraction `p_i·p_j`.
///
/// Components are 0-based internally (`eps[0][1]` is `ε₁₂`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonConvention {
    pub eps: [[i64; 2]; 2],
    pub eps_up: [[i64; 2]; 2],
    /// Sign in `p_i·p_j = orientation · ε^{αβ} ∂_{iα} ∂_{jβ}`.
    pub orientation: i64,
}

/// The convention used throughout the crate: `ε₁₂ = ε^{12} = 1`, orientation −1.
pub const CONVENTION: EpsilonConvention = EpsilonConvention {
    eps: [[0, 1], [-1, 0]],
    eps_up: [[0, 1], [-1, 0]],
    orientation: -1,
};

impl Default for EpsilonConvention {
    fn default() -> Self {
        CONVENTION
    }
}

impl EpsilonConvention {
    /// `ε_{αβ}` with 1-based indices.
    pub fn lower(&self, a: usize, b: usize) -> Result<i64> {
        check_index(a)?;
        check_index(b)?;
        Ok(self.eps[a - 1][b - 1])
    }

    /// `ε^{αβ}` with 1-based indices.
    pub fn upper(&self, a: usize, b: usize) -> Result<i64> {
        check_index(a)?;
        check_index(b)?;
        Ok(self.eps_up[a - 1][b - 1])
    }

    /// `v^α = ε^{αβ} v_β`.
    pub fn raise(&self, v: [i64; 2]) -> [i64; 2] {
        let e = &self.eps_up;
        [e[0][0] * v[0] + e[0][1] * v[1], e[1][0] * v[0] + e[1][1] * v[1]]
    }

    /// `v_α = v^β ε_{βα}`, the inverse of [`raise`](Self::raise).
    pub fn lower_vec(&self, v: [i64; 2]) -> [i64; 2] {
        let e = &self.eps;
        [v[0] * e[0][0] + v[1] * e[1][0], v[0] * e[0][1] + v[1] * e[1][1]]
    }

    /// Coefficient of `∂_{iα} ∂_{jβ}` in `p_i·p_j` (0-based components).
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        self.orientation * self.eps_up[a][b]
    }
}

fn check_index(a: usize) -> Result<()> {
    if a == 1 || a == 2 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(a))
    }
}

/// `n (n-1) ⋯ (n-k+1)`, zero when `k > n`.
pub(crate) fn falling(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| (n - i) as i64).product()
}

/// `(p_1·p_2)^m` applied to `y^a ⊗ y^b`, returned as (coefficient, exponents of slot 1, exponents of slot 2).
///
/// With the crate convention `p_1·p_2 = -∂_{1,1}∂_{2,2} + ∂_{1,2}∂_{2,1}`.
pub(crate) fn contract_pow(a: [u32; 2], b: [u32; 2], m: u32) -> Vec<(Scalar, [u32; 2], [u32; 2])> {
    let c12 = CONVENTION.pairing(0, 1);
    let c21 = CONVENTION.pairing(1, 0);
    let mut out = Vec::new();
    for k in 0..=m {
        // k factors of the (2,1) piece, m-k of the (1,2) piece
        let j = m - k;
        if j > a[0] || k > a[1] || j > b[1] || k > b[0] {
            continue;
        }
        let n = falling(a[0], j) * falling(a[1], k) * falling(b[1], j) * falling(b[0], k);
        let sign = c12.pow(j) * c21.pow(k);
        let c = Scalar::binomial(m, k) * Scalar::from_int(n * sign);
        out.push((c, [a[0] - j, a[1] - k], [b[0] - k, b[1] - j]));
    }
    out
}

/// Moyal–Weyl product, `[y_α, y_β]_⋆ = -2ħ ε_{αβ}`.
pub fn moyal_star(f: &YPoly, g: &YPoly) -> YPoly {
    let mut out = YPoly::zero();
    for (a, fc) in f.iter() {
        for (b, gc) in g.iter() {
            let coeff = fc * gc;
            let top = (a[0] + a[1]).min(b[0] + b[1]);
            for m in 0..=top {
                let weight = ParamPoly::term([m, 0], Scalar::inv_factorial(m));
                for (c, ra, rb) in contract_pow(*a, *b, m) {
                    out.add_term([ra[0] + rb[0], ra[1] + rb[1]], (&coeff * &weight).scale(&c));
                }
            }
        }
    }
    out
}

/// `(f + f'R)⋆(g + g'R) = f⋆g + f'⋆g̃' + (f⋆g' + f'⋆g̃)R`.
pub fn crossed_star(a: &OrbifoldElement, b: &OrbifoldElement) -> OrbifoldElement {
    let bt = twist(b);
    let p0 = &moyal_star(&a.part0, &b.part0) + &moyal_star(&a.part1, &bt.part1);
    let p1 = &moyal_star(&a.part0, &b.part1) + &moyal_star(&a.part1, &bt.part0);
    OrbifoldElement::new(p0, p1)
}

/// `t_{αβ} = -½ y_α y_β`.
pub fn sp2_bilinear(alpha: usize, beta: usize) -> Result<YPoly> {
    check_index(alpha)?;
    check_index(beta)?;
    let mut e = [0u32; 2];
    e[alpha - 1] += 1;
    e[beta - 1] += 1;
    Ok(YPoly::term(e, ParamPoly::scalar(Scalar::new(-1, 2))))
}

/// `f⋆g - g⋆f`.
pub fn star_commutator(f: &YPoly, g: &YPoly) -> YPoly {
    &moyal_star(f, g) - &moyal_star(g, f)
}
