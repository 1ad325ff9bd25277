//! Elements `f0(y) + f1(y)·R` of the crossed product with the reflection `R`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::param::ParamPoly;
use super::scalar::Scalar;
use super::text::render_terms;
use super::ypoly::{twist_poly, YPoly};

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct OrbifoldElement {
    pub part0: YPoly,
    pub part1: YPoly,
}

/// One flattened term of an element, in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: Scalar,
    pub hbar_pow: u32,
    pub u_pow: u32,
    pub y1_pow: u32,
    pub y2_pow: u32,
    pub r_pow: u32,
}

impl Term {
    pub fn sort_key(&self) -> (u32, u32, u32, u32, u32) {
        (self.u_pow, self.hbar_pow, self.y1_pow, self.y2_pow, self.r_pow)
    }
}

impl OrbifoldElement {
    pub fn new(part0: YPoly, part1: YPoly) -> Self {
        OrbifoldElement { part0, part1 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(YPoly::one())
    }

    pub fn r() -> Self {
        OrbifoldElement::new(YPoly::zero(), YPoly::one())
    }

    pub fn from_poly(f: YPoly) -> Self {
        OrbifoldElement::new(f, YPoly::zero())
    }

    /// `f·R^power`, with the power folded mod 2.
    pub fn graded(f: YPoly, r_power: u32) -> Self {
        if r_power.is_multiple_of(2) {
            OrbifoldElement::new(f, YPoly::zero())
        } else {
            OrbifoldElement::new(YPoly::zero(), f)
        }
    }

    pub fn part(&self, r: u32) -> &YPoly {
        if r.is_multiple_of(2) {
            &self.part0
        } else {
            &self.part1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn scale_param(&self, p: &ParamPoly) -> Self {
        OrbifoldElement::new(self.part0.scale_param(p), self.part1.scale_param(p))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        OrbifoldElement::new(self.part0.scale(s), self.part1.scale(s))
    }

    pub fn evaluate_params(&self, hbar: Option<&Scalar>, u: Option<&Scalar>) -> Self {
        OrbifoldElement::new(
            self.part0.evaluate_params(hbar, u),
            self.part1.evaluate_params(hbar, u),
        )
    }

    /// Flattened terms sorted by (u, ħ, y1, y2, R) powers.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for (r, part) in [(0u32, &self.part0), (1, &self.part1)] {
            for (&[a1, a2], c) in part.iter() {
                for (&[h, u], s) in c.iter() {
                    out.push(Term {
                        coeff: s.clone(),
                        hbar_pow: h,
                        u_pow: u,
                        y1_pow: a1,
                        y2_pow: a2,
                        r_pow: r,
                    });
                }
            }
        }
        out.sort_by_key(Term::sort_key);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut p = [YPoly::zero(), YPoly::zero()];
        for t in terms {
            let c = ParamPoly::term([t.hbar_pow, t.u_pow], t.coeff);
            p[(t.r_pow % 2) as usize].add_term([t.y1_pow, t.y2_pow], c);
        }
        let [a, b] = p;
        OrbifoldElement::new(a, b)
    }

    /// Largest y-degree over both parts.
    pub fn y_degree(&self) -> Option<u32> {
        self.part0.total_degree().max(self.part1.total_degree())
    }
}

/// `f(y,R) -> f(-y,R)`, i.e. conjugation by `R`.
pub fn twist(f: &OrbifoldElement) -> OrbifoldElement {
    OrbifoldElement::new(twist_poly(&f.part0), twist_poly(&f.part1))
}

impl fmt::Display for OrbifoldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().into_iter().map(|t| {
            (
                t.coeff,
                vec![
                    ("h", t.hbar_pow),
                    ("u", t.u_pow),
                    ("y1", t.y1_pow),
                    ("y2", t.y2_pow),
                    ("R", t.r_pow),
                ],
            )
        });
        f.write_str(&render_terms(terms))
    }
}

impl Add for &OrbifoldElement {
    type Output = OrbifoldElement;
    fn add(self, rhs: Self) -> OrbifoldElement {
        OrbifoldElement::new(&self.part0 + &rhs.part0, &self.part1 + &rhs.part1)
    }
}

impl Sub for &OrbifoldElement {
    type Output = OrbifoldElement;
    fn sub(self, rhs: Self) -> OrbifoldElement {
        OrbifoldElement::new(&self.part0 - &rhs.part0, &self.part1 - &rhs.part1)
    }
}

impl Neg for &OrbifoldElement {
    type Output = OrbifoldElement;
    fn neg(self) -> OrbifoldElement {
        OrbifoldElement::new(-&self.part0, -&self.part1)
    }
}

impl From<YPoly> for OrbifoldElement {
    fn from(f: YPoly) -> Self {
        OrbifoldElement::from_poly(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_examples() {
        let y1 = OrbifoldElement::from_poly(YPoly::y1());
        assert_eq!(twist(&y1), -&y1);
        let y12 = OrbifoldElement::from_poly(YPoly::monomial(1, 1));
        assert_eq!(twist(&y12), y12);
        let mixed = OrbifoldElement::new(YPoly::y1(), YPoly::monomial(0, 2));
        let expect = OrbifoldElement::new(-&YPoly::y1(), YPoly::monomial(0, 2));
        assert_eq!(twist(&mixed), expect);
    }

    #[test]
    fn canonical_text_order() {
        let e = OrbifoldElement::new(
            &YPoly::monomial(1, 1) - &YPoly::from_param(ParamPoly::hbar()),
            YPoly::from_param(-&ParamPoly::u()),
        );
        assert_eq!(e.to_string(), "y1*y2 - h - u*R");
        assert_eq!(OrbifoldElement::zero().to_string(), "0");
        let back = OrbifoldElement::from_terms(e.terms());
        assert_eq!(back, e);
    }
}
