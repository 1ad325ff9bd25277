//! Structure maps `m_n(a, b, c_1, …, c_n)` and the `φ_n` kernel for a general one-form `A`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::deformation::calibration;
use crate::error::{Error, Result};
use crate::exact::{ParamPoly, Scalar, YPoly};
use crate::integration::{CellDomain, IntegrandPoly};
use crate::kernels::{GaussianKernel, KernelEvaluator};

/// A [`GaussianKernel`] with `n + 3` slots: output, `a`, `b`, then `c_1..c_n`.
pub type MultiKernel = GaussianKernel;

fn var(i: usize) -> IntegrandPoly {
    IntegrandPoly::var(i)
}

fn int(n: i64) -> IntegrandPoly {
    IntegrandPoly::constant(ParamPoly::int(n))
}

fn one_minus_two(p: &IntegrandPoly) -> IntegrandPoly {
    &int(1) - &p.scale(&Scalar::from_int(2))
}

fn product<I: IntoIterator<Item = IntegrandPoly>>(it: I) -> IntegrandPoly {
    it.into_iter().fold(IntegrandPoly::one(), |a, b| &a * &b)
}

/// Kernel of `m_n`; variables `k_1..k_n` (simplex) at `0..n`, `t_1..t_n` (cube) at `n..2n`.
pub fn build_mn_kernel(n: usize) -> Result<MultiKernel> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    let k = |i: usize| var(i - 1);
    let t = |i: usize| var(n + i - 1);
    let w = |i: usize| one_minus_two(&t(i));
    let tk = |i: usize| &t(i) * &k(i);
    let two = Scalar::from_int(2);

    let p02 = product((1..=n).map(w));
    let e = (1..=n).fold(IntegrandPoly::zero(), |acc, j| {
        &acc + &(&tk(j) * &product((j + 1..=n).map(w)))
    });
    let f = (1..=n).fold(IntegrandPoly::zero(), |acc, j| {
        &acc + &(&tk(j) * &product((1..j).map(w)))
    });
    let p01 = &int(1) - &e.scale(&two);
    let p12 = &f.scale(&two) + &p02;

    let overall = &(&int(4i64.pow(n as u32)) * &product((1..=n).map(t)))
        * &product((1..n).map(|j| w(j).pow((n - j) as u32)));

    let mut kernel = GaussianKernel::new(n + 3, CellDomain::new(n, n))?
        .with_prefactor(1, 2, n as u32)?
        .with_exponent(0, 1, p01)?
        .with_exponent(0, 2, p02)?
        .with_exponent(1, 2, p12.map_coeffs(|c| c * &ParamPoly::hbar()))?
        .with_overall(overall);
    for i in 1..=n {
        let inner = (1..i).fold(IntegrandPoly::zero(), |acc, j| {
            &acc + &(&tk(j) * &product((j + 1..=i).map(w)))
        });
        let c1 = &tk(i).scale(&two) - &(&t(i) * &inner).scale(&Scalar::from_int(4));
        let c2 = (&t(i) * &product((1..i).map(w))).scale(&two);
        kernel = kernel
            .with_exponent(1, i + 2, c1)?
            .with_exponent(2, i + 2, c2)?;
    }
    Ok(kernel)
}

type Registry = RwLock<HashMap<usize, Arc<KernelEvaluator>>>;

fn mn_evaluator(n: usize) -> Result<Arc<KernelEvaluator>> {
    static REG: OnceLock<Registry> = OnceLock::new();
    let reg = REG.get_or_init(Default::default);
    if let Some(e) = reg.read().unwrap().get(&n) {
        return Ok(e.clone());
    }
    let ev = Arc::new(KernelEvaluator::new(build_mn_kernel(n)?));
    Ok(reg.write().unwrap().entry(n).or_insert(ev).clone())
}

/// `m_n(a, b, c_1, …, c_n)` with `n = cs.len()`, calibrated like `φ_n`.
///
/// Only the `y`-polynomial is returned; the caller reattaches `Rⁿ`.
pub fn mn(a: &YPoly, b: &YPoly, cs: &[YPoly]) -> Result<YPoly> {
    let n = cs.len();
    if n < 1 {
        return Err(Error::SlotMismatch {
            expected: 3,
            got: 2,
        });
    }
    let mut args = Vec::with_capacity(n + 2);
    args.push(a.clone());
    args.push(b.clone());
    args.extend(cs.iter().cloned());
    let raw = mn_evaluator(n)?.integrate(&args)?;
    Ok(raw.scale(&calibration().pow(n as u32)))
}

/// Symbols of the general-`A` formula: `p_i` (derivative in slot `i`) and `q_j` (derivative in
/// the auxiliary `z`-variable of the `j`-th inserted form).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    P(usize),
    Q(usize),
}

impl Sym {
    /// Canonical order `p_0, p_1, p_2, p_3, q_3, p_4, q_4, …`.
    fn rank(self) -> (usize, usize) {
        match self {
            Sym::P(i) => (i, 0),
            Sym::Q(i) => (i, 1),
        }
    }
}

/// `Π_i (p_1 · Σ_s c_{i,s} s) · exp[Σ c_{ab} a·b]` with polynomial coefficients.
///
/// Variables: `σ_1..σ_n` (simplex) at `0..n`, `τ_1..τ_n` at `n..2n` once forms are inserted.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralKernel {
    pub order: usize,
    pub exponent: BTreeMap<(Sym, Sym), IntegrandPoly>,
    pub prefactor: Vec<BTreeMap<Sym, IntegrandPoly>>,
    pub overall: IntegrandPoly,
}

impl GeneralKernel {
    fn add(&mut self, a: Sym, b: Sym, c: IntegrandPoly) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a.rank() < b.rank() { ((a, b), c) } else { ((b, a), -c) };
        let entry = self.exponent.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.exponent.remove(&key);
        }
    }
}

/// The general-`A` kernel:
/// `4ⁿ Π_{i=2}^{n+1} Σ_{j=2}^{i} p_1·p_j · exp[Σ_{i<j} p_i·p_j + 2Σ_j σ_j p_1·q_{j+2} + 2Σ_{2≤i<j} p_i·q_j]`.
pub fn build_general_phi_kernel(n: usize) -> Result<GeneralKernel> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    let mut k = GeneralKernel {
        order: n,
        exponent: BTreeMap::new(),
        prefactor: Vec::new(),
        overall: int(4i64.pow(n as u32)),
    };
    for i in 0..=n + 2 {
        for j in i + 1..=n + 2 {
            k.add(Sym::P(i), Sym::P(j), int(1));
        }
    }
    for j in 1..=n {
        k.add(Sym::P(1), Sym::Q(j + 2), var(j - 1).scale(&Scalar::from_int(2)));
    }
    for i in 2..=n + 2 {
        for j in i + 1..=n + 2 {
            k.add(Sym::P(i), Sym::Q(j), int(2));
        }
    }
    for i in 2..=n + 1 {
        k.prefactor
            .push((2..=i).map(|j| (Sym::P(j), int(1))).collect());
    }
    Ok(k)
}

/// Inserts `f_j = exp[τ_j z_j·y_j]` with weight `τ_j dτ_j` into every auxiliary slot and
/// returns the resulting three-slot kernel over `Δ_n × [0,1]^n`.
///
/// Slot `j` is eliminated by collecting `X_j` (the partner of `p_j`) and `Q_j` (the partner of
/// `q_j`): the pairing turns the exponent into `τ_j Q_j·X_j` and the prefactor `p_1·p_j` into
/// `-τ_j p_1·Q_j`. `ħ` is attached to the `p_1·p_2` coefficient, as in the `φ_n` kernel.
pub fn insert_gaussian_forms(general: &GeneralKernel) -> Result<GaussianKernel> {
    let n = general.order;
    let mut k = general.clone();
    for j in 3..=n + 2 {
        let tau = var(n + j - 3);
        let mut x: BTreeMap<Sym, IntegrandPoly> = BTreeMap::new();
        let mut q: BTreeMap<Sym, IntegrandPoly> = BTreeMap::new();
        let mut kept = BTreeMap::new();
        for ((a, b), c) in std::mem::take(&mut k.exponent) {
            let slot = if b == Sym::P(j) {
                Some((&mut x, a, c))
            } else if a == Sym::P(j) {
                Some((&mut x, b, -c))
            } else if b == Sym::Q(j) {
                Some((&mut q, a, c))
            } else if a == Sym::Q(j) {
                Some((&mut q, b, -c))
            } else {
                kept.insert((a, b), c);
                None
            };
            if let Some((map, s, c)) = slot {
                *map.entry(s).or_default() += &c;
            }
        }
        k.exponent = kept;
        for (qs, qc) in &q {
            for (xs, xc) in &x {
                k.add(*qs, *xs, &(&tau * qc) * xc);
            }
        }
        for factor in k.prefactor.iter_mut() {
            if let Some(cf) = factor.remove(&Sym::P(j)) {
                for (qs, qc) in &q {
                    let entry = factor.entry(*qs).or_default();
                    *entry -= &(&(&tau * &cf) * qc);
                }
            }
        }
        k.overall = &k.overall * &tau;
    }

    let mut overall = k.overall.clone();
    for factor in &k.prefactor {
        let mut c = IntegrandPoly::zero();
        for (s, v) in factor {
            // p_1·p_1 vanishes
            if v.is_zero() || *s == Sym::P(1) {
                continue;
            }
            if *s != Sym::P(2) {
                return Err(Error::InvalidPair(1, sym_slot(*s)));
            }
            c = v.clone();
        }
        overall = &overall * &c;
    }

    let mut out = GaussianKernel::new(3, CellDomain::new(n, n))?
        .with_prefactor(1, 2, k.prefactor.len() as u32)?
        .with_overall(overall);
    for ((a, b), c) in k.exponent {
        match (a, b) {
            (Sym::P(i), Sym::P(j)) if j <= 2 => {
                let c = if (i, j) == (1, 2) {
                    c.map_coeffs(|p| p * &ParamPoly::hbar())
                } else {
                    c
                };
                out = out.with_exponent(i, j, c)?;
            }
            _ => return Err(Error::InvalidPair(sym_slot(a), sym_slot(b))),
        }
    }
    Ok(out)
}

fn sym_slot(s: Sym) -> usize {
    match s {
        Sym::P(i) | Sym::Q(i) => i,
    }
}

/// Pulls a `(u, v)` kernel over `Δ_n × [0,1]^n` back to the raw homotopy times `t_1..t_{2n}` on the
/// `2n`-cube: `v_k = t_{2k-1}`, `u_k = Π_{m=k}^{n} t_{2m}`, with Jacobian `Π_{k=2}^{n} u_k`.
pub fn raw_time_pullback(k: &GaussianKernel) -> Result<GaussianKernel> {
    let dom = k.domain();
    let n = dom.n_simplex;
    if dom.n_cube != n || n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    // raw time t_i lives at index i-1; shift the (u, v) variables out of the way first
    let shift = 2 * n;
    let image = |i: usize| -> IntegrandPoly {
        if i < n {
            product((i + 1..=n).map(|m| var(2 * m - 1)))
        } else {
            var(2 * (i - n))
        }
    };
    let pull = |p: &IntegrandPoly| -> IntegrandPoly {
        let moved = p.map_monomials(|e| {
            let mut v = vec![0u32; shift];
            v.extend_from_slice(e.as_slice());
            crate::exact::MultiExp::new(v)
        });
        (0..2 * n).fold(moved, |acc, i| acc.substitute(shift + i, &image(i)))
    };
    let jacobian = product((2..=n).map(|k| image(k - 1)));

    let mut out = GaussianKernel::new(k.slot_count(), CellDomain::new(0, 2 * n))?
        .with_overall(&pull(k.overall()) * &jacobian);
    for (&(i, j), &p) in k.prefactor() {
        out = out.with_prefactor(i, j, p)?;
    }
    for (&(i, j), c) in k.exponent() {
        out = out.with_exponent(i, j, pull(c))?;
    }
    Ok(out)
}
