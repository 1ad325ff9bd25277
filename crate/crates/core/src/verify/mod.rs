//! Residual checkers for the algebraic identities of the deformation, plus exhaustive and
//! randomized suites over monomials.

pub mod pbw;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::ainfinity::mn;
use crate::deformation::{
    circle_product, dunkl_product, phi, phi2_explicit, phi_with, DunklElement, PhiParameterization,
};
use crate::exact::{twist_poly, OrbifoldElement, ParamPoly, Scalar, YPoly};
use crate::weyl::{crossed_star, moyal_star, sp2_bilinear};

pub use pbw::{
    is_confluent_on, pbw_from_element, pbw_normal_form, pbw_normal_form_with, pbw_product,
    pbw_to_element, random_word, Letter, PbwWord, RewriteStrategy,
};

/// `a⋆φ_1(b,c) - φ_1(a⋆b,c) + φ_1(a,b⋆c) - φ_1(a,b)⋆c̃`.
pub fn check_hochschild_phi1(a: &YPoly, b: &YPoly, c: &YPoly) -> YPoly {
    let ct = twist_poly(c);
    let mut r = moyal_star(a, &phi(1, b, c));
    r -= &phi(1, &moyal_star(a, b), c);
    r += &phi(1, a, &moyal_star(b, c));
    r -= &moyal_star(&phi(1, a, b), &ct);
    r
}

/// `u²` part of `(a∘b)∘c - a∘(b∘c)` for `y`-only arguments:
/// `-a⋆φ_2(b,c) + φ_2(a⋆b,c) - φ_2(a,b⋆c) + φ_2(a,b)⋆c + φ_1(φ_1(a,b),c̃) - φ_1(a,φ_1(b,c))`.
pub fn check_second_order(a: &YPoly, b: &YPoly, c: &YPoly) -> YPoly {
    second_order_with_sign(a, b, c, 1)
}

/// The same combination with the opposite sign on the two `φ_1φ_1` terms.
pub fn check_second_order_flipped(a: &YPoly, b: &YPoly, c: &YPoly) -> YPoly {
    second_order_with_sign(a, b, c, -1)
}

fn second_order_with_sign(a: &YPoly, b: &YPoly, c: &YPoly, sign: i64) -> YPoly {
    let ct = twist_poly(c);
    let mut r = -&moyal_star(a, &phi(2, b, c));
    r += &phi(2, &moyal_star(a, b), c);
    r -= &phi(2, a, &moyal_star(b, c));
    r += &moyal_star(&phi(2, a, b), c);
    let nested = &phi(1, &phi(1, a, b), &ct) - &phi(1, a, &phi(1, b, c));
    r += &nested.scale(&Scalar::from_int(sign));
    r
}

/// `-a·φ_1(b,c) + φ_1(a·b,c) - φ_1(a,b·c) + φ_1(a,b)·c̃` at `ħ = 0`.
pub fn check_commutative_cocycle(a: &YPoly, b: &YPoly, c: &YPoly) -> YPoly {
    let zero = Scalar::zero();
    let phi0 = |x: &YPoly, y: &YPoly| phi(1, x, y).evaluate_params(Some(&zero), None);
    let ct = twist_poly(c);
    let mut r = -&(a * &phi0(b, c));
    r += &phi0(&(a * b), c);
    r -= &phi0(a, &(b * c));
    r += &(&phi0(a, b) * &ct);
    r.evaluate_params(Some(&zero), None)
}

/// `(a∘b)∘c - a∘(b∘c)`.
pub fn associator(a: &OrbifoldElement, b: &OrbifoldElement, c: &OrbifoldElement) -> OrbifoldElement {
    &circle_product(&circle_product(a, b), c) - &circle_product(a, &circle_product(b, c))
}

/// `(a∘b)∘c - a∘(b∘c)` for the Dunkl product.
pub fn dunkl_associator(a: &DunklElement, b: &DunklElement, c: &DunklElement) -> DunklElement {
    &dunkl_product(&dunkl_product(a, b), c) - &dunkl_product(a, &dunkl_product(b, c))
}

/// Product used to assemble the Casimir element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasimirProduct {
    Star,
    Circle,
    Pbw,
}

/// `C_2 = -½ t_{αβ} t^{αβ} = -½(t_11 t_22 + t_22 t_11 - t_12 t_21 - t_21 t_12)` under the chosen
/// product (with `ε^{12} = 1`). Under `Pbw` the result is read back through the normal-word basis.
pub fn casimir_element(product: CasimirProduct) -> OrbifoldElement {
    let t = |a, b| OrbifoldElement::from_poly(sp2_bilinear(a, b).expect("valid indices"));
    let pairs = [((1, 1), (2, 2), 1), ((2, 2), (1, 1), 1), ((1, 2), (2, 1), -1), ((2, 1), (1, 2), -1)];
    let half = Scalar::new(-1, 2);
    match product {
        CasimirProduct::Star | CasimirProduct::Circle => {
            let mul = |x: &OrbifoldElement, y: &OrbifoldElement| match product {
                CasimirProduct::Star => crossed_star(x, y),
                _ => circle_product(x, y),
            };
            let mut acc = OrbifoldElement::zero();
            for ((a, b), (c, d), s) in pairs {
                acc = &acc + &mul(&t(a, b), &t(c, d)).scale(&Scalar::from_int(s));
            }
            acc.scale(&half)
        }
        CasimirProduct::Pbw => {
            let mut words = Vec::new();
            for ((a, b), (c, d), s) in pairs {
                let prod = pbw_product(&pbw_from_element(&t(a, b)), &pbw_from_element(&t(c, d)));
                let k = &half * &Scalar::from_int(s);
                words.extend(prod.into_iter().map(|w| PbwWord::new(w.letters, w.coeff.scale(&k))));
            }
            pbw_to_element(&pbw_normal_form(&words))
        }
    }
}

/// Outcome of a named family of exact checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

/// Checks `Π±∘Π± = Π±`, `Π±∘Π∓ = 0`, `Π₊ + Π₋ = 1`, `Π±∘y_α∘Π± = 0` and `Π±∘(y_1y_2)∘Π∓ = 0` under
/// both the crossed product and the deformed product.
pub fn projector_checks() -> SuiteReport {
    let half = Scalar::new(1, 2);
    let one = OrbifoldElement::one();
    let r = OrbifoldElement::r();
    let plus = (&one + &r).scale(&half);
    let minus = (&one - &r).scale(&half);
    let y = |i| OrbifoldElement::from_poly(YPoly::y(i));
    let y12 = OrbifoldElement::from_poly(YPoly::monomial(1, 1));
    let mut rep = SuiteReport::new("projectors");
    rep.record(&plus + &minus == one, || "Π₊ + Π₋ ≠ 1".into());
    type Mul = fn(&OrbifoldElement, &OrbifoldElement) -> OrbifoldElement;
    for (name, mul) in [("⋆", crossed_star as Mul), ("∘", circle_product as Mul)] {
        for (p, q, label) in [(&plus, &minus, "+"), (&minus, &plus, "-")] {
            rep.record(mul(p, p) == *p, || format!("Π{label}{name}Π{label} ≠ Π{label}"));
            rep.record(mul(p, q).is_zero(), || format!("Π{label}{name}Π∓ ≠ 0"));
            for i in 1..=2 {
                rep.record(mul(&mul(p, &y(i)), p).is_zero(), || {
                    format!("Π{label}{name}y{i}{name}Π{label} ≠ 0")
                });
            }
            rep.record(mul(&mul(p, &y12), q).is_zero(), || {
                format!("Π{label}{name}y1y2{name}Π∓ ≠ 0")
            });
        }
    }
    rep
}

/// Monomials `[a, b]` with `a + b ≤ max_degree`, ordered by degree.
pub fn monomials_up_to(max_degree: u32) -> Vec<[u32; 2]> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).map(move |a| [a, d - a]))
        .collect()
}

fn deg(m: [u32; 2]) -> u32 {
    m[0] + m[1]
}

/// All monomial triples of total degree `≤ max_total`.
pub fn monomial_triples(max_total: u32) -> Vec<[[u32; 2]; 3]> {
    let mons = monomials_up_to(max_total);
    let mut out = Vec::new();
    for &a in &mons {
        for &b in &mons {
            for &c in &mons {
                if deg(a) + deg(b) + deg(c) <= max_total {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// A graded monomial `y^m R^r`.
pub type GradedMonomial = ([u32; 2], u32);

/// All graded monomial triples of total degree `≤ max_total`, both `R`-sectors in each slot.
pub fn graded_monomial_triples(max_total: u32) -> Vec<[GradedMonomial; 3]> {
    let mut out = Vec::new();
    for [a, b, c] in monomial_triples(max_total) {
        for bits in 0..8u32 {
            out.push([(a, bits & 1), (b, (bits >> 1) & 1), (c, (bits >> 2) & 1)]);
        }
    }
    out
}

fn graded(m: GradedMonomial) -> OrbifoldElement {
    OrbifoldElement::graded(YPoly::monomial(m.0[0], m.0[1]), m.1)
}

fn mono(m: [u32; 2]) -> YPoly {
    YPoly::monomial(m[0], m[1])
}

fn fmt_graded(m: GradedMonomial) -> String {
    format!("y1^{}*y2^{}*R^{}", m.0[0], m.0[1], m.1)
}

fn run_graded<F>(name: &str, triples: &[[GradedMonomial; 3]], check: F) -> SuiteReport
where
    F: Fn(&[GradedMonomial; 3]) -> bool + Sync,
{
    triples
        .par_iter()
        .map(|t| {
            let mut r = SuiteReport::new(name);
            r.record(check(t), || {
                format!("({}, {}, {})", fmt_graded(t[0]), fmt_graded(t[1]), fmt_graded(t[2]))
            });
            r
        })
        .reduce(|| SuiteReport::new(name), SuiteReport::merge)
}

fn run_plain<F>(name: &str, max_total: u32, check: F) -> SuiteReport
where
    F: Fn(&YPoly, &YPoly, &YPoly) -> YPoly + Sync,
{
    let triples = monomial_triples(max_total);
    triples
        .par_iter()
        .map(|[a, b, c]| {
            let mut r = SuiteReport::new(name);
            let res = check(&mono(*a), &mono(*b), &mono(*c));
            r.record(res.is_zero(), || format!("({a:?}, {b:?}, {c:?}) -> {res:?}"));
            r
        })
        .reduce(|| SuiteReport::new(name), SuiteReport::merge)
}

/// Associativity of `∘` on all graded monomial triples of total degree `≤ max_total`.
pub fn associativity_suite(max_total: u32) -> SuiteReport {
    let triples = graded_monomial_triples(max_total);
    run_graded("associativity", &triples, |t| {
        associator(&graded(t[0]), &graded(t[1]), &graded(t[2])).is_zero()
    })
}

/// Associativity of `∘` on `count` graded triples sampled without replacement.
pub fn associativity_random_subset(max_total: u32, count: usize, seed: u64) -> SuiteReport {
    let mut triples = graded_monomial_triples(max_total);
    triples.shuffle(&mut StdRng::seed_from_u64(seed));
    triples.truncate(count);
    run_graded("associativity (random subset)", &triples, |t| {
        associator(&graded(t[0]), &graded(t[1]), &graded(t[2])).is_zero()
    })
}

pub fn hochschild_suite(max_total: u32) -> SuiteReport {
    run_plain("hochschild φ1", max_total, check_hochschild_phi1)
}

pub fn second_order_suite(max_total: u32) -> SuiteReport {
    run_plain("second order", max_total, check_second_order)
}

pub fn commutative_cocycle_suite(max_total: u32) -> SuiteReport {
    run_plain("commutative cocycle", max_total, check_commutative_cocycle)
}

/// Associativity of the Dunkl product on graded `(w, w̄)` monomial triples.
pub fn dunkl_suite(max_total: u32) -> SuiteReport {
    let triples = graded_monomial_triples(max_total);
    let el = |m: GradedMonomial| DunklElement::monomial(m.0[0], m.0[1], m.1);
    run_graded("dunkl associativity", &triples, |t| {
        dunkl_associator(&el(t[0]), &el(t[1]), &el(t[2])).is_zero()
    })
}

/// `[C_2, f]_∘ = 0` for every even monomial `f` (and `fR`) of degree `≤ max_degree`.
pub fn casimir_centrality_suite(max_degree: u32) -> SuiteReport {
    let c2 = casimir_element(CasimirProduct::Circle);
    let mut rep = SuiteReport::new("casimir centrality");
    for m in monomials_up_to(max_degree) {
        if deg(m) % 2 == 1 {
            continue;
        }
        for r in 0..2 {
            let f = graded((m, r));
            let comm = &circle_product(&c2, &f) - &circle_product(&f, &c2);
            rep.record(comm.is_zero(), || format!("[C2, {}] = {comm}", fmt_graded((m, r))));
        }
    }
    rep
}

/// UV, W, HPT (and for `n = 2` the explicit integrand) agree on monomial pairs.
pub fn parameterization_suite(max_order: usize, max_degree: u32) -> SuiteReport {
    let mons = monomials_up_to(max_degree);
    let mut jobs = Vec::new();
    for n in 1..=max_order {
        for &a in &mons {
            for &b in &mons {
                jobs.push((n, a, b));
            }
        }
    }
    jobs.par_iter()
        .map(|&(n, a, b)| {
            let mut r = SuiteReport::new("parameterizations");
            let (f, g) = (mono(a), mono(b));
            let uv = phi(n, &f, &g);
            for p in [PhiParameterization::W, PhiParameterization::HPT] {
                let other = phi_with(p, n, &f, &g).expect("valid order");
                r.record(other == uv, || format!("{p:?} n={n} ({a:?}, {b:?})"));
            }
            if n == 2 {
                let explicit = phi2_explicit(&f, &g).expect("two arguments");
                r.record(explicit == uv, || format!("explicit n=2 ({a:?}, {b:?})"));
            }
            r
        })
        .reduce(|| SuiteReport::new("parameterizations"), SuiteReport::merge)
}

/// `m_n(a, b, 1, …, 1) = φ_n(a, b)` on monomial pairs.
pub fn mn_consistency_suite(max_order: usize, max_degree: u32) -> SuiteReport {
    let mons = monomials_up_to(max_degree);
    let mut jobs = Vec::new();
    for n in 1..=max_order {
        for &a in &mons {
            for &b in &mons {
                jobs.push((n, a, b));
            }
        }
    }
    jobs.par_iter()
        .map(|&(n, a, b)| {
            let mut r = SuiteReport::new("mn consistency");
            let ones = vec![YPoly::one(); n];
            let lhs = mn(&mono(a), &mono(b), &ones).expect("n >= 1");
            r.record(lhs == phi(n, &mono(a), &mono(b)), || format!("n={n} ({a:?}, {b:?})"));
            r
        })
        .reduce(|| SuiteReport::new("mn consistency"), SuiteReport::merge)
}

/// Rewriting confluence on `count` random words of length `≤ max_len`.
pub fn pbw_confluence_suite(count: usize, max_len: usize, seed: u64) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let words: Vec<PbwWord> = (0..count).map(|_| random_word(&mut rng, max_len)).collect();
    let mut rep = SuiteReport::new("pbw confluence");
    for (i, w) in words.iter().enumerate() {
        rep.record(is_confluent_on(std::slice::from_ref(w), seed ^ i as u64), || {
            format!("word {i}: {w}")
        });
    }
    // [q1, q2] read back equals the circle commutator of y1, y2
    let q = |l| vec![PbwWord::new(vec![l], ParamPoly::one())];
    let comm = pbw_normal_form(
        &[
            pbw_product(&q(Letter::Q1), &q(Letter::Q2)),
            pbw_product(&q(Letter::Q2), &q(Letter::Q1))
                .into_iter()
                .map(|w| PbwWord::new(w.letters, -&w.coeff))
                .collect(),
        ]
        .concat(),
    );
    let y = |i| OrbifoldElement::from_poly(YPoly::y(i));
    let circ = &circle_product(&y(1), &y(2)) - &circle_product(&y(2), &y(1));
    rep.record(pbw_to_element(&comm) == circ, || "commutator mismatch".into());
    rep
}
