//! Rewriting oracle for `A_{ħ,u}` presented by generators `q_1, q_2, R` and relations
//! `[q_1, q_2] = -2(ħ + uR)`, `R q_α = -q_α R`, `R² = 1`.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exact::{OrbifoldElement, ParamPoly, Scalar, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Q1,
    Q2,
    R,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Q1 => "q1",
            Letter::Q2 => "q2",
            Letter::R => "R",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwWord {
    pub letters: Vec<Letter>,
    pub coeff: ParamPoly,
}

impl PbwWord {
    pub fn new(letters: Vec<Letter>, coeff: ParamPoly) -> Self {
        PbwWord { letters, coeff }
    }

    /// Normal words read `q_1^a q_2^b R^c` with `c ≤ 1`.
    pub fn is_normal(&self) -> bool {
        redexes(&self.letters).is_empty()
    }
}

impl fmt::Display for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        let w = if w.is_empty() { "1".to_string() } else { w.join("*") };
        write!(f, "({})*{}", self.coeff, w)
    }
}

/// Order in which redexes are contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Positions `i` where `letters[i], letters[i+1]` match a rule.
fn redexes(letters: &[Letter]) -> Vec<usize> {
    letters
        .windows(2)
        .enumerate()
        .filter(|(_, w)| matches!(w, [Letter::Q2, Letter::Q1] | [Letter::R, Letter::Q1 | Letter::Q2 | Letter::R]))
        .map(|(i, _)| i)
        .collect()
}

/// One rewrite step at position `i`.
fn rewrite_at(letters: &[Letter], i: usize) -> Vec<(Vec<Letter>, ParamPoly)> {
    let (head, tail) = (&letters[..i], &letters[i + 2..]);
    let splice = |mid: &[Letter]| -> Vec<Letter> {
        head.iter().chain(mid).chain(tail).copied().collect()
    };
    match (letters[i], letters[i + 1]) {
        (Letter::Q2, Letter::Q1) => vec![
            (splice(&[Letter::Q1, Letter::Q2]), ParamPoly::one()),
            (splice(&[]), ParamPoly::hbar().scale(&Scalar::from_int(2))),
            (splice(&[Letter::R]), ParamPoly::u().scale(&Scalar::from_int(2))),
        ],
        (Letter::R, Letter::R) => vec![(splice(&[]), ParamPoly::one())],
        (Letter::R, q) => vec![(splice(&[q, Letter::R]), ParamPoly::int(-1))],
        _ => unreachable!("not a redex"),
    }
}

/// Normal form with the leftmost strategy.
pub fn pbw_normal_form(words: &[PbwWord]) -> Vec<PbwWord> {
    pbw_normal_form_with(words, RewriteStrategy::Leftmost)
}

/// Rewrites until every word is normal; like words are merged and zero terms dropped.
pub fn pbw_normal_form_with(words: &[PbwWord], strategy: RewriteStrategy) -> Vec<PbwWord> {
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: Vec<(Vec<Letter>, ParamPoly)> =
        words.iter().map(|w| (w.letters.clone(), w.coeff.clone())).collect();
    let mut done: BTreeMap<Vec<Letter>, ParamPoly> = BTreeMap::new();
    while let Some((letters, coeff)) = pending.pop() {
        if coeff.is_zero() {
            continue;
        }
        let spots = redexes(&letters);
        if spots.is_empty() {
            let entry = done.entry(letters).or_default();
            *entry += &coeff;
            continue;
        }
        let i = match (strategy, rng.as_mut()) {
            (RewriteStrategy::Leftmost, _) => spots[0],
            (RewriteStrategy::Rightmost, _) => spots[spots.len() - 1],
            (RewriteStrategy::Random(_), Some(r)) => spots[r.gen_range(0..spots.len())],
            (RewriteStrategy::Random(_), None) => unreachable!(),
        };
        for (w, c) in rewrite_at(&letters, i) {
            pending.push((w, &coeff * &c));
        }
    }
    done.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| PbwWord::new(l, c))
        .collect()
}

/// Product of two combinations: concatenation followed by normal ordering.
pub fn pbw_product(a: &[PbwWord], b: &[PbwWord]) -> Vec<PbwWord> {
    let mut words = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut l = x.letters.clone();
            l.extend_from_slice(&y.letters);
            words.push(PbwWord::new(l, &x.coeff * &y.coeff));
        }
    }
    pbw_normal_form(&words)
}

/// Sum of combinations, normalized.
pub fn pbw_sum(parts: &[&[PbwWord]]) -> Vec<PbwWord> {
    let words: Vec<PbwWord> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    pbw_normal_form(&words)
}

/// Symmetrized image: each `y_1^a y_2^b` becomes the average of all orderings of `a` letters
/// `q_1` and `b` letters `q_2`; an `R` factor is appended on the right.
pub fn pbw_from_element(x: &OrbifoldElement) -> Vec<PbwWord> {
    let mut words = Vec::new();
    for t in x.terms() {
        let arrangements = arrangements(t.y1_pow as usize, t.y2_pow as usize);
        let weight = Scalar::new(1, arrangements.len() as i64);
        let coeff = ParamPoly::term([t.hbar_pow, t.u_pow], &t.coeff * &weight);
        for mut w in arrangements {
            if t.r_pow % 2 == 1 {
                w.push(Letter::R);
            }
            words.push(PbwWord::new(w, coeff.clone()));
        }
    }
    pbw_normal_form(&words)
}

/// Reads normal words `q_1^a q_2^b R^c` as the basis element `y_1^a y_2^b R^c`.
pub fn pbw_to_element(words: &[PbwWord]) -> OrbifoldElement {
    let mut terms = Vec::new();
    for w in pbw_normal_form(words) {
        let count = |l| w.letters.iter().filter(|&&x| x == l).count() as u32;
        for (&[h, u], c) in w.coeff.iter() {
            terms.push(Term {
                coeff: c.clone(),
                hbar_pow: h,
                u_pow: u,
                y1_pow: count(Letter::Q1),
                y2_pow: count(Letter::Q2),
                r_pow: count(Letter::R),
            });
        }
    }
    OrbifoldElement::from_terms(terms)
}

/// All distinct words with `a` letters `q_1` and `b` letters `q_2`.
fn arrangements(a: usize, b: usize) -> Vec<Vec<Letter>> {
    if a == 0 {
        return vec![vec![Letter::Q2; b]];
    }
    if b == 0 {
        return vec![vec![Letter::Q1; a]];
    }
    let mut out = Vec::new();
    for mut w in arrangements(a - 1, b) {
        w.insert(0, Letter::Q1);
        out.push(w);
    }
    for mut w in arrangements(a, b - 1) {
        w.insert(0, Letter::Q2);
        out.push(w);
    }
    out
}

/// A random word of length `< max_len + 1` with unit coefficient.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> PbwWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Letter::Q1,
            1 => Letter::Q2,
            _ => Letter::R,
        })
        .collect();
    PbwWord::new(letters, ParamPoly::one())
}

/// Whether leftmost, rightmost and a random strategy agree on `words`.
pub fn is_confluent_on(words: &[PbwWord], seed: u64) -> bool {
    let left = pbw_normal_form_with(words, RewriteStrategy::Leftmost);
    let right = pbw_normal_form_with(words, RewriteStrategy::Rightmost);
    let random = pbw_normal_form_with(words, RewriteStrategy::Random(seed));
    left == right && left == random
}
