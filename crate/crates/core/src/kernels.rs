//! Gaussian symbol operators acting on tuples of polynomials.
//!
//! Slot 0 is the output variable `y`; slots `1..slots` carry the arguments. A kernel is
//!
//! ```text
//! overall · Π (p_i·p_j)^{k_ij} · exp[Σ c_0i p_0·p_i + Σ c_ij p_i·p_j]
//! ```
//!
//! where `p_0·p_i` shifts argument `i` to `c_0i·y`, and `p_i·p_j` is the ε-contraction of the
//! derivatives in slots `i` and `j`. Every factor commutes with every other, so the operator
//! is evaluated term by term: contract, then substitute, then integrate.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exact::{ParamPoly, Scalar, SparsePoly, YPoly};
use crate::integration::{integrate_cell, CellDomain, IntegrandPoly};
use crate::weyl::contract_pow;

/// `y`-polynomial whose coefficients still depend on the integration variables.
pub type KernelOutput = SparsePoly<[u32; 2], IntegrandPoly>;

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianKernel {
    slots: usize,
    prefactor: BTreeMap<(usize, usize), u32>,
    exponent: BTreeMap<(usize, usize), IntegrandPoly>,
    overall: IntegrandPoly,
    domain: CellDomain,
}

impl GaussianKernel {
    pub fn new(slots: usize, domain: CellDomain) -> Result<Self> {
        if slots < 2 {
            return Err(Error::SlotMismatch {
                expected: 2,
                got: slots,
            });
        }
        Ok(GaussianKernel {
            slots,
            prefactor: BTreeMap::new(),
            exponent: BTreeMap::new(),
            overall: IntegrandPoly::one(),
            domain,
        })
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if a == b || b >= self.slots {
            return Err(Error::InvalidPair(i, j));
        }
        Ok((a, b))
    }

    /// Multiplies by `(p_i·p_j)^power`. Slot 0 is not allowed.
    pub fn with_prefactor(mut self, i: usize, j: usize, power: u32) -> Result<Self> {
        let (a, b) = self.check_pair(i, j)?;
        if a == 0 {
            return Err(Error::InvalidPair(i, j));
        }
        if power > 0 {
            *self.prefactor.entry((a, b)).or_insert(0) += power;
        }
        Ok(self)
    }

    /// Adds `coeff · p_i·p_j` to the exponent. Reversing the pair flips the sign.
    pub fn with_exponent(mut self, i: usize, j: usize, coeff: IntegrandPoly) -> Result<Self> {
        let (a, b) = self.check_pair(i, j)?;
        let coeff = if (a, b) == (i, j) { coeff } else { -coeff };
        let entry = self.exponent.entry((a, b)).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.exponent.remove(&(a, b));
        }
        Ok(self)
    }

    pub fn with_overall(mut self, overall: IntegrandPoly) -> Self {
        self.overall = overall;
        self
    }

    pub fn slot_count(&self) -> usize {
        self.slots
    }

    pub fn arity(&self) -> usize {
        self.slots - 1
    }

    pub fn prefactor(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.prefactor
    }

    pub fn exponent(&self) -> &BTreeMap<(usize, usize), IntegrandPoly> {
        &self.exponent
    }

    /// Exponent coefficient of `p_i·p_j` (zero when absent).
    pub fn exponent_coeff(&self, i: usize, j: usize) -> IntegrandPoly {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let c = self.exponent.get(&(a, b)).cloned().unwrap_or_default();
        if (a, b) == (i, j) {
            c
        } else {
            -c
        }
    }

    pub fn overall(&self) -> &IntegrandPoly {
        &self.overall
    }

    pub fn domain(&self) -> CellDomain {
        self.domain
    }

    fn check_args(&self, got: usize) -> Result<()> {
        if got != self.arity() {
            return Err(Error::SlotMismatch {
                expected: self.arity(),
                got,
            });
        }
        Ok(())
    }

    /// Contraction pairs among argument slots, in evaluation order.
    fn contraction_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .prefactor
            .keys()
            .chain(self.exponent.keys())
            .filter(|(a, _)| *a > 0)
            .copied()
            .collect();
        pairs.sort();
        pairs.dedup();
        pairs
    }

    /// Expands the operator on a tuple of argument monomials.
    ///
    /// Returns `(scalar, key, y-exponent)` triples; `key[p]` is the power of the `p`-th exponent
    /// coefficient (in map order) multiplying the term.
    fn expand(&self, args: &[[u32; 2]], reverse: bool) -> Vec<(Scalar, Vec<u32>, [u32; 2])> {
        let index: HashMap<(usize, usize), usize> =
            self.exponent.keys().enumerate().map(|(n, p)| (*p, n)).collect();
        let mut pairs = self.contraction_pairs();
        if reverse {
            pairs.reverse();
        }

        let mut states: HashMap<(Vec<[u32; 2]>, Vec<u32>), Scalar> = HashMap::new();
        states.insert((args.to_vec(), vec![0; self.exponent.len()]), Scalar::one());

        for (i, j) in pairs {
            let pre = self.prefactor.get(&(i, j)).copied().unwrap_or(0);
            let slot = index.get(&(i, j)).copied();
            let mut next: HashMap<(Vec<[u32; 2]>, Vec<u32>), Scalar> = HashMap::new();
            for ((exps, key), c) in states {
                let (a, b) = (exps[i - 1], exps[j - 1]);
                let mut m = 0u32;
                loop {
                    let hits = contract_pow(a, b, pre + m);
                    if hits.is_empty() {
                        break;
                    }
                    let weight = &c * &Scalar::inv_factorial(m);
                    for (w, ra, rb) in hits {
                        let mut e = exps.clone();
                        e[i - 1] = ra;
                        e[j - 1] = rb;
                        let mut k = key.clone();
                        if let Some(s) = slot {
                            k[s] += m;
                        }
                        let entry = next.entry((e, k)).or_insert_with(Scalar::zero);
                        *entry += &(&weight * &w);
                    }
                    if slot.is_none() {
                        break;
                    }
                    m += 1;
                }
            }
            next.retain(|_, c| !c.is_zero());
            states = next;
        }

        let mut out = Vec::with_capacity(states.len());
        'state: for ((exps, mut key), c) in states {
            let mut y = [0u32; 2];
            for (s, e) in exps.iter().enumerate() {
                let d = e[0] + e[1];
                if d == 0 {
                    continue;
                }
                match index.get(&(0, s + 1)) {
                    Some(&p) => key[p] += d,
                    None => continue 'state,
                }
                y[0] += e[0];
                y[1] += e[1];
            }
            out.push((c, key, y));
        }
        out
    }
}

/// Caching evaluator for one kernel: memoizes coefficient powers, integrated amplitudes and
/// results on monomial tuples. Safe to share between threads.
pub struct KernelEvaluator {
    kernel: GaussianKernel,
    coeffs: Vec<IntegrandPoly>,
    powers: RwLock<HashMap<(usize, u32), IntegrandPoly>>,
    amplitudes: RwLock<HashMap<Vec<u32>, ParamPoly>>,
    monomials: RwLock<HashMap<Vec<[u32; 2]>, YPoly>>,
}

impl KernelEvaluator {
    pub fn new(kernel: GaussianKernel) -> Self {
        let coeffs = kernel.exponent.values().cloned().collect();
        KernelEvaluator {
            kernel,
            coeffs,
            powers: RwLock::new(HashMap::new()),
            amplitudes: RwLock::new(HashMap::new()),
            monomials: RwLock::new(HashMap::new()),
        }
    }

    pub fn kernel(&self) -> &GaussianKernel {
        &self.kernel
    }

    fn power(&self, p: usize, e: u32) -> IntegrandPoly {
        if let Some(v) = self.powers.read().unwrap().get(&(p, e)) {
            return v.clone();
        }
        let v = if e == 0 {
            IntegrandPoly::one()
        } else {
            &self.power(p, e - 1) * &self.coeffs[p]
        };
        self.powers.write().unwrap().insert((p, e), v.clone());
        v
    }

    /// `Π c_p^{key_p}` before integration.
    fn amplitude_poly(&self, key: &[u32]) -> IntegrandPoly {
        let mut acc = IntegrandPoly::one();
        for (p, &e) in key.iter().enumerate() {
            if e > 0 {
                acc = &acc * &self.power(p, e);
            }
        }
        acc
    }

    /// `∫ overall · Π c_p^{key_p}` over the kernel domain.
    fn amplitude(&self, key: &[u32]) -> Result<ParamPoly> {
        if let Some(v) = self.amplitudes.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let integrand = &self.kernel.overall * &self.amplitude_poly(key);
        let v = integrate_cell(&integrand, &self.kernel.domain)?;
        self.amplitudes.write().unwrap().insert(key.to_vec(), v.clone());
        Ok(v)
    }

    /// Integrated kernel on a tuple of monomials with unit coefficients.
    pub fn integrate_monomials(&self, args: &[[u32; 2]]) -> Result<YPoly> {
        self.kernel.check_args(args.len())?;
        if let Some(v) = self.monomials.read().unwrap().get(args) {
            return Ok(v.clone());
        }
        let mut out = YPoly::zero();
        for (c, key, y) in self.kernel.expand(args, false) {
            out.add_term(y, self.amplitude(&key)?.scale(&c));
        }
        self.monomials
            .write()
            .unwrap()
            .insert(args.to_vec(), out.clone());
        Ok(out)
    }

    /// Integrated kernel applied to polynomial arguments (multilinear extension).
    pub fn integrate(&self, args: &[YPoly]) -> Result<YPoly> {
        self.kernel.check_args(args.len())?;
        let mut out = YPoly::zero();
        let mut failure = None;
        for_each_monomial_tuple(args, &mut |mons, coeff| {
            if failure.is_some() {
                return;
            }
            match self.integrate_monomials(mons) {
                Ok(v) => out += &v.scale_param(coeff),
                Err(e) => failure = Some(e),
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// The operator before integration; coefficients keep the integration variables.
    pub fn apply(&self, args: &[YPoly]) -> Result<KernelOutput> {
        self.kernel.check_args(args.len())?;
        let mut out = KernelOutput::zero();
        for_each_monomial_tuple(args, &mut |mons, coeff| {
            for (c, key, y) in self.kernel.expand(mons, false) {
                let amp = self.amplitude_poly(&key).map_coeffs(|p| p * coeff);
                out.add_term(y, amp.scale(&c));
            }
        });
        Ok(out)
    }
}

/// Calls `f` on every tuple of monomials drawn from `args`, with the product of their coefficients.
fn for_each_monomial_tuple(args: &[YPoly], f: &mut dyn FnMut(&[[u32; 2]], &ParamPoly)) {
    fn rec(
        args: &[YPoly],
        mons: &mut Vec<[u32; 2]>,
        coeff: &ParamPoly,
        f: &mut dyn FnMut(&[[u32; 2]], &ParamPoly),
    ) {
        match args.split_first() {
            None => f(mons, coeff),
            Some((first, rest)) => {
                for (k, c) in first.iter() {
                    mons.push(*k);
                    rec(rest, mons, &(coeff * c), f);
                    mons.pop();
                }
            }
        }
    }
    rec(args, &mut Vec::with_capacity(args.len()), &ParamPoly::one(), f);
}

/// Applies `k` to `args`, keeping the integration variables symbolic.
pub fn kernel_apply(k: &GaussianKernel, args: &[YPoly]) -> Result<KernelOutput> {
    KernelEvaluator::new(k.clone()).apply(args)
}

/// Applies `k` to `args` and integrates `overall ·` the result over the kernel's cell.
pub fn kernel_integrate(k: &GaussianKernel, args: &[YPoly]) -> Result<YPoly> {
    KernelEvaluator::new(k.clone()).integrate(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::moyal_star;
    use proptest::prelude::*;

    fn constant(c: ParamPoly) -> IntegrandPoly {
        IntegrandPoly::constant(c)
    }

    fn moyal_kernel() -> GaussianKernel {
        GaussianKernel::new(3, CellDomain::default())
            .unwrap()
            .with_exponent(0, 1, IntegrandPoly::one())
            .unwrap()
            .with_exponent(0, 2, IntegrandPoly::one())
            .unwrap()
            .with_exponent(1, 2, constant(ParamPoly::hbar()))
            .unwrap()
    }

    fn arb_ypoly() -> impl Strategy<Value = YPoly> {
        prop::collection::vec((0u32..4, 0u32..4, -3i64..4, 0u32..2), 1..4).prop_map(|ts| {
            YPoly::from_terms(ts.into_iter().map(|(a, b, c, h)| {
                ([a, b], ParamPoly::term([h, 0], Scalar::from_int(c)))
            }))
        })
    }

    #[test]
    fn pure_shift_is_identity() {
        let k = GaussianKernel::new(2, CellDomain::default())
            .unwrap()
            .with_exponent(0, 1, IntegrandPoly::one())
            .unwrap();
        let f = &YPoly::monomial(2, 3) + &YPoly::y1();
        assert_eq!(kernel_integrate(&k, std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn single_contraction() {
        let k = GaussianKernel::new(3, CellDomain::default())
            .unwrap()
            .with_prefactor(1, 2, 1)
            .unwrap();
        let v = kernel_integrate(&k, &[YPoly::y1(), YPoly::y2()]).unwrap();
        assert_eq!(v, YPoly::from_scalar_const(Scalar::from_int(-1)));
        let w = kernel_integrate(&k, &[YPoly::y2(), YPoly::y1()]).unwrap();
        assert_eq!(w, YPoly::one());
    }

    #[test]
    fn self_pairs_rejected() {
        let k = GaussianKernel::new(3, CellDomain::default()).unwrap();
        assert!(matches!(
            k.clone().with_prefactor(1, 1, 1),
            Err(Error::InvalidPair(1, 1))
        ));
        assert!(k.clone().with_prefactor(0, 1, 1).is_err());
        assert!(k.clone().with_exponent(2, 2, IntegrandPoly::one()).is_err());
        assert!(k.with_exponent(1, 3, IntegrandPoly::one()).is_err());
        // p_i·p_i vanishes: the antisymmetric contraction of a slot with itself
        let f = &(&YPoly::monomial(3, 1) + &YPoly::monomial(2, 2)) + &YPoly::monomial(0, 4);
        let c = crate::weyl::CONVENTION;
        let mut total = YPoly::zero();
        for a in 0..2 {
            for b in 0..2 {
                let d = f.partial(a + 1).partial(b + 1);
                total += &d.scale(&Scalar::from_int(c.pairing(a, b)));
            }
        }
        assert!(total.is_zero());
    }

    #[test]
    fn slot_mismatch() {
        let k = moyal_kernel();
        assert!(matches!(
            kernel_integrate(&k, &[YPoly::y1()]),
            Err(Error::SlotMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn trivial_domain_apply_equals_integrate() {
        let k = moyal_kernel();
        let args = [YPoly::monomial(2, 1), YPoly::monomial(1, 2)];
        let applied = kernel_apply(&k, &args).unwrap();
        let flattened = YPoly::from_terms(applied.iter().map(|(y, c)| (*y, c.constant_term())));
        assert_eq!(flattened, kernel_integrate(&k, &args).unwrap());
    }

    proptest! {
        #[test]
        fn moyal_kernel_matches_star(f in arb_ypoly(), g in arb_ypoly()) {
            let k = moyal_kernel();
            prop_assert_eq!(kernel_integrate(&k, &[f.clone(), g.clone()]).unwrap(), moyal_star(&f, &g));
        }

        #[test]
        fn pair_order_is_irrelevant(
            a in (0u32..3, 0u32..3), b in (0u32..3, 0u32..3), c in (0u32..3, 0u32..3),
            pre in 0u32..2, w in -3i64..4,
        ) {
            let x = IntegrandPoly::var(0);
            let k = GaussianKernel::new(4, CellDomain::new(1, 0)).unwrap()
                .with_prefactor(1, 3, pre).unwrap()
                .with_exponent(0, 1, IntegrandPoly::one()).unwrap()
                .with_exponent(0, 2, x.clone()).unwrap()
                .with_exponent(0, 3, IntegrandPoly::one()).unwrap()
                .with_exponent(1, 2, x.scale(&Scalar::from_int(w))).unwrap()
                .with_exponent(2, 3, IntegrandPoly::one()).unwrap();
            let mons = [[a.0, a.1], [b.0, b.1], [c.0, c.1]];
            let collect = |rev| {
                let mut m: BTreeMap<(Vec<u32>, [u32; 2]), Scalar> = BTreeMap::new();
                for (c, key, y) in k.expand(&mons, rev) {
                    *m.entry((key, y)).or_insert_with(Scalar::zero) += &c;
                }
                m.retain(|_, c| !c.is_zero());
                m
            };
            prop_assert_eq!(collect(false), collect(true));
        }

        #[test]
        fn degree_bookkeeping(f in arb_ypoly(), g in arb_ypoly(), pre in 0u32..3) {
            let k = GaussianKernel::new(3, CellDomain::default()).unwrap()
                .with_prefactor(1, 2, pre).unwrap()
                .with_exponent(0, 1, IntegrandPoly::one()).unwrap()
                .with_exponent(0, 2, IntegrandPoly::one()).unwrap()
                .with_exponent(1, 2, IntegrandPoly::one()).unwrap();
            let out = kernel_integrate(&k, &[f.clone(), g.clone()]).unwrap();
            if let Some(d) = out.total_degree() {
                let bound = f.total_degree().unwrap() + g.total_degree().unwrap();
                prop_assert!(d + 2 * pre <= bound);
            }
        }
    }
}
