//! Expression grammar:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | symbol ('^' integer)? | '(' expr ')' ('^' integer)?
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Symbols are `y1 y2 h u R w wb`. Products are expanded on the spot; `R` only marks the
//! reflection sector of a term (its power is folded mod 2), so factor order inside a term does
//! not matter and `R` always reads as the rightmost factor.

use std::collections::BTreeMap;
use std::fmt;

use orbistar_core::deformation::{DunklElement, DunklPoly};
use orbistar_core::{OrbifoldElement, ParamPoly, Scalar, Term};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    U,
    H,
    Y1,
    Y2,
    W,
    Wb,
    R,
}

impl Symbol {
    fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "y1" => Symbol::Y1,
            "y2" => Symbol::Y2,
            "h" => Symbol::H,
            "u" => Symbol::U,
            "R" => Symbol::R,
            "w" => Symbol::W,
            "wb" => Symbol::Wb,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Y1 => "y1",
            Symbol::Y2 => "y2",
            Symbol::H => "h",
            Symbol::U => "u",
            Symbol::R => "R",
            Symbol::W => "w",
            Symbol::Wb => "wb",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
    #[error("symbol `{name}` is not allowed here ({mode} expression)")]
    Disallowed { name: String, mode: &'static str },
}

/// A fully expanded sum of terms `coeff · Π symbol^power`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: BTreeMap<Vec<(Symbol, u32)>, Scalar>,
}

impl ExprAst {
    fn constant(c: Scalar) -> Self {
        let mut a = ExprAst::default();
        a.add(Vec::new(), c);
        a
    }

    fn symbol(s: Symbol) -> Self {
        let mut a = ExprAst::default();
        a.add(vec![(s, 1)], Scalar::one());
        a
    }

    fn add(&mut self, mono: Vec<(Symbol, u32)>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn plus(&self, other: &ExprAst, sign: i64) -> ExprAst {
        let mut out = self.clone();
        let s = Scalar::from_int(sign);
        for (m, c) in &other.terms {
            out.add(m.clone(), c * &s);
        }
        out
    }

    fn times(&self, other: &ExprAst) -> ExprAst {
        let mut out = ExprAst::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add(merge(ma, mb), ca * cb);
            }
        }
        out
    }

    fn pow(&self, k: u32) -> ExprAst {
        (0..k).fold(ExprAst::constant(Scalar::one()), |acc, _| acc.times(self))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Symbols used anywhere in the expression.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut s: Vec<Symbol> = self.terms.keys().flatten().map(|(s, _)| *s).collect();
        s.sort();
        s.dedup();
        s
    }

    fn power(mono: &[(Symbol, u32)], s: Symbol) -> u32 {
        mono.iter().find(|(x, _)| *x == s).map_or(0, |(_, p)| *p)
    }

    fn reject(&self, banned: &[Symbol], mode: &'static str) -> Result<(), ParseError> {
        match self.symbols().into_iter().find(|s| banned.contains(s)) {
            Some(s) => Err(ParseError::Disallowed {
                name: s.name().to_string(),
                mode,
            }),
            None => Ok(()),
        }
    }

    /// Element of the crossed product; `w` and `wb` are rejected.
    pub fn to_element(&self) -> Result<OrbifoldElement, ParseError> {
        self.reject(&[Symbol::W, Symbol::Wb], "oscillator")?;
        Ok(OrbifoldElement::from_terms(self.terms.iter().map(|(m, c)| Term {
            coeff: c.clone(),
            hbar_pow: Self::power(m, Symbol::H),
            u_pow: Self::power(m, Symbol::U),
            y1_pow: Self::power(m, Symbol::Y1),
            y2_pow: Self::power(m, Symbol::Y2),
            r_pow: Self::power(m, Symbol::R),
        })))
    }

    /// Element in the Dunkl coordinates; `y1`, `y2` and `h` are rejected.
    pub fn to_dunkl(&self) -> Result<DunklElement, ParseError> {
        self.reject(&[Symbol::Y1, Symbol::Y2, Symbol::H], "Dunkl")?;
        let mut parts = [DunklPoly::zero(), DunklPoly::zero()];
        for (m, c) in &self.terms {
            let coeff = ParamPoly::term([0, Self::power(m, Symbol::U)], c.clone());
            let r = Self::power(m, Symbol::R) as usize;
            parts[r].add_term([Self::power(m, Symbol::W), Self::power(m, Symbol::Wb)], coeff);
        }
        let [a, b] = parts;
        Ok(DunklElement::new(a, b))
    }
}

fn merge(a: &[(Symbol, u32)], b: &[(Symbol, u32)]) -> Vec<(Symbol, u32)> {
    let mut m: BTreeMap<Symbol, u32> = BTreeMap::new();
    for (s, p) in a.iter().chain(b) {
        *m.entry(*s).or_insert(0) += p;
    }
    if let Some(r) = m.get_mut(&Symbol::R) {
        *r %= 2;
    }
    m.into_iter().filter(|(_, p)| *p > 0).collect()
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            (c.clone(), m.iter().map(|(s, p)| (s.name(), *p)).collect::<Vec<_>>())
        });
        f.write_str(&orbistar_core::exact::text::render_terms(terms))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = ExprAst::default().plus(&acc, -1);
        }
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.plus(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.times(&self.factor()?);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.at += 1;
                Ok(s)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let pos = self.pos();
        if self.peek() == Some(&Tok::Op('-')) {
            return Err(ParseError::NegativeExponent { pos });
        }
        let s = self.integer()?;
        s.parse().map_err(|_| ParseError::Syntax {
            pos,
            msg: "exponent too large".into(),
        })
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let mut text = n;
                if self.eat('/') {
                    let den_pos = self.pos();
                    let d = self.integer()?;
                    if d.trim_start_matches('0').is_empty() {
                        return Err(ParseError::Syntax {
                            pos: den_pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    text = format!("{text}/{d}");
                }
                let value: Scalar = text.parse().map_err(|_| ParseError::Syntax {
                    pos,
                    msg: "invalid rational".into(),
                })?;
                Ok(ExprAst::constant(value))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let sym = Symbol::from_name(&name).ok_or(ParseError::UnknownSymbol { pos, name })?;
                let k = self.exponent()?;
                Ok(ExprAst::symbol(sym).pow(k))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                let k = self.exponent()?;
                Ok(inner.pow(k))
            }
            Some(_) => self.error("expected a number, symbol or `(`"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses and expands an expression.
pub fn parse_expression(text: &str) -> Result<ExprAst, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let ast = p.expr()?;
    if p.at != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let a = parse_expression("3/2*y1^2*y2 + u*R").unwrap();
        assert_eq!(a.len(), 2);
        let b = parse_expression("y1*(y2 + 1)").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.to_string(), "y1 + y1*y2");
        assert!(matches!(
            parse_expression("y1^-1"),
            Err(ParseError::NegativeExponent { pos: 3 })
        ));
    }

    #[test]
    fn r_folds() {
        let e = parse_expression("R^3*y1 + R*R").unwrap().to_element().unwrap();
        assert_eq!(e.to_string(), "1 + y1*R");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expression("y3"), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(parse_expression("y1 +"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expression("(y1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expression("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expression("y1 y2"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(parse_expression("w*h").unwrap().to_dunkl().is_err());
        assert!(parse_expression("w*y1").unwrap().to_element().is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        for s in ["y1*y2 - h - u*R", "-2*h - 2*u*R", "1/2*u*R", "-3/4*h^2", "0"] {
            let e = parse_expression(s).unwrap().to_element().unwrap();
            assert_eq!(e.to_string(), s);
        }
    }
}
