//! Sparse polynomials over an arbitrary exact coefficient ring.
//!
//! One generic container backs every polynomial type in the crate: parameters
//! (`ħ`, `u`), oscillator polynomials in `y`, and integrands in the simplex and
//! cube variables. Nesting is by coefficient type, e.g. a `y`-polynomial has
//! parameter-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::scalar::Scalar;

/// Exact commutative ring element usable as a polynomial coefficient.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn from_scalar(s: Scalar) -> Self {
        Self::one().scale(&s)
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}

/// Exponent vector of a monomial.
pub trait Monomial: Clone + Ord + Hash + Debug + Send + Sync {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn degree(&self) -> u32;
}

impl<const N: usize> Monomial for [u32; N] {
    fn one() -> Self {
        [0; N]
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for (o, e) in out.iter_mut().zip(other) {
            *o += e;
        }
        out
    }
    fn degree(&self) -> u32 {
        self.iter().sum()
    }
}

/// Exponent vector of unbounded length. Trailing zeros are trimmed so that
/// equal monomials compare equal regardless of how many variables were named.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiExp(Vec<u32>);

impl MultiExp {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        MultiExp(exps)
    }

    /// The monomial `x_var^power`.
    pub fn var(var: usize, power: u32) -> Self {
        let mut v = vec![0; var + 1];
        v[var] = power;
        MultiExp::new(v)
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Number of variables up to and including the last nonzero exponent.
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn with(&self, var: usize, power: u32) -> Self {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = power;
        MultiExp::new(v)
    }
}

impl Monomial for MultiExp {
    fn one() -> Self {
        MultiExp(Vec::new())
    }
    fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (o, e) in v.iter_mut().zip(short) {
            *o += e;
        }
        MultiExp(v)
    }
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<K: Monomial, C: Coefficient> {
    terms: BTreeMap<K, C>,
}

impl<K: Monomial, C: Coefficient> Default for SparsePoly<K, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Monomial, C: Coefficient> Debug for SparsePoly<K, C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Monomial, C: Coefficient> SparsePoly<K, C> {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(K::one(), c)
    }

    pub fn term(k: K, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (K, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c·k`, pruning the entry if it cancels.
    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, k: &K) -> Option<&C> {
        self.terms.get(k)
    }

    pub fn coeff_or_zero(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff_or_zero(&K::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| *k == K::one())
    }

    /// Largest total degree among the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Multiplies every coefficient by `c` (on the right).
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Transforms coefficients into another ring.
    pub fn map_coeffs_into<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> SparsePoly<K, D> {
        SparsePoly::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Relabels monomials, merging collisions.
    pub fn map_monomials<L: Monomial, F: Fn(&K) -> L>(&self, f: F) -> SparsePoly<L, C> {
        SparsePoly::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    pub fn filter<F: Fn(&K, &C) -> bool>(&self, f: F) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, c)| f(k, c))
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<K: Monomial, C: Coefficient> Coefficient for SparsePoly<K, C> {
    fn zero() -> Self {
        SparsePoly::zero()
    }
    fn one() -> Self {
        SparsePoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        SparsePoly::scale(self, s)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn from_scalar(s: Scalar) -> Self {
        SparsePoly::constant(C::from_scalar(s))
    }
}

impl<K: Monomial, C: Coefficient> AddAssign<&SparsePoly<K, C>> for SparsePoly<K, C> {
    fn add_assign(&mut self, rhs: &SparsePoly<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Monomial, C: Coefficient> SubAssign<&SparsePoly<K, C>> for SparsePoly<K, C> {
    fn sub_assign(&mut self, rhs: &SparsePoly<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.neg_ref());
        }
    }
}

impl<K: Monomial, C: Coefficient> Add for &SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn add(self, rhs: Self) -> SparsePoly<K, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Monomial, C: Coefficient> Sub for &SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn sub(self, rhs: Self) -> SparsePoly<K, C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Monomial, C: Coefficient> Mul for &SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn mul(self, rhs: Self) -> SparsePoly<K, C> {
        let mut out = SparsePoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(kb), ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<K: Monomial, C: Coefficient> Neg for &SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn neg(self) -> SparsePoly<K, C> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

impl<K: Monomial, C: Coefficient> Add for SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn add(mut self, rhs: Self) -> SparsePoly<K, C> {
        self += &rhs;
        self
    }
}

impl<K: Monomial, C: Coefficient> Sub for SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn sub(mut self, rhs: Self) -> SparsePoly<K, C> {
        self -= &rhs;
        self
    }
}

impl<K: Monomial, C: Coefficient> Mul for SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn mul(self, rhs: Self) -> SparsePoly<K, C> {
        &self * &rhs
    }
}

impl<K: Monomial, C: Coefficient> Neg for SparsePoly<K, C> {
    type Output = SparsePoly<K, C>;
    fn neg(self) -> SparsePoly<K, C> {
        -&self
    }
}

/// Polynomial in independently indexed variables `x_0, x_1, …`.
pub type MultiPoly<C> = SparsePoly<MultiExp, C>;

impl<C: Coefficient> SparsePoly<MultiExp, C> {
    /// The variable `x_var` with unit coefficient.
    pub fn var(var: usize) -> Self {
        Self::term(MultiExp::var(var, 1), C::one())
    }

    /// Substitutes `x_var -> value`, where `value` is itself a polynomial in the same variables.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let mut powers: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            let e = k.get(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Self::term(k.with(var, 0), c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Highest variable index in use plus one.
    pub fn span(&self) -> usize {
        self.iter().map(|(k, _)| k.span()).max().unwrap_or(0)
    }
}
