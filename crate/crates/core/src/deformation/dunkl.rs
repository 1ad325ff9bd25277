//! The `ħ = 0` deformation realized through Dunkl-type divided differences in complex
//! coordinates `w`, `w̄`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::exact::{ParamPoly, Scalar, SparsePoly};
use crate::exact::text::render_terms;

/// Polynomial in `w` (exponent index 0) and `w̄` (index 1).
pub type DunklPoly = SparsePoly<[u32; 2], ParamPoly>;

/// `f_0(w, w̄) + f_1(w, w̄)·R` with `R w R = -w`, `R w̄ R = -w̄`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DunklElement {
    pub part0: DunklPoly,
    pub part1: DunklPoly,
}

impl DunklElement {
    pub fn new(part0: DunklPoly, part1: DunklPoly) -> Self {
        DunklElement { part0, part1 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        DunklElement::new(DunklPoly::one(), DunklPoly::zero())
    }

    pub fn w() -> Self {
        DunklElement::new(DunklPoly::term([1, 0], ParamPoly::one()), DunklPoly::zero())
    }

    pub fn wb() -> Self {
        DunklElement::new(DunklPoly::term([0, 1], ParamPoly::one()), DunklPoly::zero())
    }

    pub fn r() -> Self {
        DunklElement::new(DunklPoly::zero(), DunklPoly::one())
    }

    /// `w^a w̄^b R^r`.
    pub fn monomial(a: u32, b: u32, r: u32) -> Self {
        let m = DunklPoly::term([a, b], ParamPoly::one());
        if r.is_multiple_of(2) {
            DunklElement::new(m, DunklPoly::zero())
        } else {
            DunklElement::new(DunklPoly::zero(), m)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn evaluate_params(&self, u: Option<&Scalar>) -> Self {
        let f = |p: &DunklPoly| p.map_coeffs(|c| c.evaluate(None, u));
        DunklElement::new(f(&self.part0), f(&self.part1))
    }

    /// `(coeff, u_pow, w_pow, wb_pow, r_pow)` sorted by `(u, w, w̄, R)`.
    pub fn terms(&self) -> Vec<(Scalar, u32, u32, u32, u32)> {
        let mut out = Vec::new();
        for (r, part) in [(0u32, &self.part0), (1, &self.part1)] {
            for (&[a, b], c) in part.iter() {
                for (&[_, u], s) in c.iter() {
                    out.push((s.clone(), u, a, b, r));
                }
            }
        }
        out.sort_by_key(|t| (t.1, t.2, t.3, t.4));
        out
    }
}

impl fmt::Display for DunklElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().into_iter().map(|(c, u, a, b, r)| {
            (c, vec![("u", u), ("w", a), ("wb", b), ("R", r)])
        });
        f.write_str(&render_terms(terms))
    }
}

impl Add for &DunklElement {
    type Output = DunklElement;
    fn add(self, rhs: Self) -> DunklElement {
        DunklElement::new(&self.part0 + &rhs.part0, &self.part1 + &rhs.part1)
    }
}

impl Sub for &DunklElement {
    type Output = DunklElement;
    fn sub(self, rhs: Self) -> DunklElement {
        DunklElement::new(&self.part0 - &rhs.part0, &self.part1 - &rhs.part1)
    }
}

impl Neg for &DunklElement {
    type Output = DunklElement;
    fn neg(self) -> DunklElement {
        DunklElement::new(-&self.part0, -&self.part1)
    }
}

/// `f(w, w̄) -> f(-w, -w̄)`.
fn reflect(f: &DunklPoly) -> DunklPoly {
    DunklPoly::from_terms(f.iter().map(|(k, c)| {
        let c = if (k[0] + k[1]) % 2 == 1 { -c } else { c.clone() };
        (*k, c)
    }))
}

/// `(f(w, w̄) - f(-w, w̄)) / 2w`: keeps the odd-in-`w` monomials and lowers them.
fn divided_w(f: &DunklPoly) -> DunklPoly {
    DunklPoly::from_terms(
        f.iter()
            .filter(|(k, _)| k[0] % 2 == 1)
            .map(|(k, c)| ([k[0] - 1, k[1]], c.clone())),
    )
}

/// `(g(-w, w̄) - g(-w, -w̄)) / 2w̄`.
fn divided_wb(g: &DunklPoly) -> DunklPoly {
    DunklPoly::from_terms(g.iter().filter(|(k, _)| k[1] % 2 == 1).map(|(k, c)| {
        let c = if k[0] % 2 == 1 { -c } else { c.clone() };
        ([k[0], k[1] - 1], c)
    }))
}

/// `f∘g = fg + (u/2)·[(f(w,w̄) - f(-w,w̄))/2w]·[(g(-w,w̄) - g(-w,-w̄))/2w̄]·R`, extended to
/// `R`-graded arguments by moving `R` to the right: `(fR^a)∘(gR^b) = (f∘(R^a g R^a)) R^{a+b}`.
pub fn dunkl_product(a: &DunklElement, b: &DunklElement) -> DunklElement {
    let half_u = ParamPoly::u().scale(&Scalar::new(1, 2));
    let mut parts = [DunklPoly::zero(), DunklPoly::zero()];
    for (ra, f) in [(0usize, &a.part0), (1, &a.part1)] {
        if f.is_zero() {
            continue;
        }
        let df = divided_w(f);
        for (rb, g) in [(0usize, &b.part0), (1, &b.part1)] {
            if g.is_zero() {
                continue;
            }
            let g = if ra == 1 { reflect(g) } else { g.clone() };
            parts[(ra + rb) % 2] += &(f * &g);
            if !df.is_zero() {
                let corr = &df * &divided_wb(&g);
                parts[(ra + rb + 1) % 2] += &corr.map_coeffs(|c| c * &half_u);
            }
        }
    }
    let [p0, p1] = parts;
    DunklElement::new(p0, p1)
}
