//! Polynomial front-end: reads sums of monomials and keeps only their support.
//!
//! ```text
//! polynomial  := ['+'|'-'] term (('+'|'-') term)*
//! term        := coefficient ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor      := variable ['^' positive-integer]
//! coefficient := integer | integer '/' integer
//! ```
//!
//! Whitespace is insignificant. Coefficients are summed per monomial so that
//! cancelling terms drop out; the values themselves are then discarded.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::{ExponentVector, SupportSet, MAX_DIM};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    NegativeExponent,
    UnknownVariable(String),
    ZeroPolynomial,
    UnsupportedDimension(usize),
    ExponentOverflow,
}

/// A parse failure; `position` is the 0-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.position + 1;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at column {col}: {msg}"),
            ParseErrorKind::NegativeExponent => write!(f, "negative exponent at column {col}"),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable {v:?} at column {col}")
            }
            ParseErrorKind::ZeroPolynomial => write!(f, "zero polynomial has no diagram"),
            ParseErrorKind::UnsupportedDimension(n) => {
                write!(f, "unsupported number of variables {n} (supported: 2..={MAX_DIM})")
            }
            ParseErrorKind::ExponentOverflow => write!(f, "exponent too large at column {col}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// The declared variables; variable `i` owns exponent coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ParseError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if !(2..=MAX_DIM).contains(&names.len()) {
            return Err(ParseError {
                kind: ParseErrorKind::UnsupportedDimension(names.len()),
                position: 0,
            });
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric());
            if !ok || names[..i].contains(n) {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("bad variable name {n:?}")),
                    position: 0,
                });
            }
        }
        Ok(VariableSet { names })
    }

    /// `x, y, z`
    pub fn xyz() -> Self {
        VariableSet {
            names: vec!["x".into(), "y".into(), "z".into()],
        }
    }

    /// `x1, ..., xn`
    pub fn indexed(n: usize) -> Result<Self, ParseError> {
        VariableSet::new((1..=n).map(|i| format!("x{i}")))
    }

    /// Parses a comma-separated declaration such as `"x,y"`.
    pub fn from_list(list: &str) -> Result<Self, ParseError> {
        VariableSet::new(list.split(',').map(|s| s.trim().to_string()))
    }

    /// Picks a declaration for undeclared input: indexed names `x1..x9` if
    /// any appear (at least two variables), `x,y,z,w` if `w` appears,
    /// otherwise `x,y,z`.
    pub fn infer(text: &str) -> Result<Self, ParseError> {
        let mut max_index = 0usize;
        let mut has_w = false;
        for ident in identifiers(text) {
            if let Some(rest) = ident.strip_prefix('x') {
                if let Ok(i) = rest.parse::<usize>() {
                    max_index = max_index.max(i);
                }
            }
            has_w |= ident == "w";
        }
        if max_index > 0 {
            VariableSet::indexed(max_index.max(2))
        } else if has_w {
            VariableSet::new(["x", "y", "z", "w"])
        } else {
            Ok(VariableSet::xyz())
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn identifiers(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|s| s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn syntax(position: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax(msg.into()),
        position,
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a VariableSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn polynomial(&mut self) -> Result<BTreeMap<Vec<u64>, Rational>, ParseError> {
        let mut terms: BTreeMap<Vec<u64>, Rational> = BTreeMap::new();
        if self.peek().is_none() {
            return Err(syntax(self.end, "empty input"));
        }
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (coef, exps) = self.term()?;
            let coef = if negative { -coef } else { coef };
            *terms.entry(exps).or_default() += &coef;
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return Err(syntax(self.offset(), "expected '+' or '-'")),
            }
            self.bump();
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Rational, Vec<u64>), ParseError> {
        let mut exps = vec![0u64; self.vars.dim()];
        let coef = match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.coefficient()?;
                if self.peek() != Some(&Tok::Star) {
                    return Ok((c, exps));
                }
                self.bump();
                c
            }
            _ => Rational::one(),
        };
        loop {
            self.factor(&mut exps)?;
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coef, exps))
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let Some(Tok::Int(num)) = self.bump() else {
            unreachable!("caller checked for an integer")
        };
        if self.peek() != Some(&Tok::Slash) {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(den)) if !den.is_zero() => Ok(Rational::new(num, den)),
            Some(Tok::Int(_)) => Err(syntax(at, "zero denominator")),
            _ => Err(syntax(at, "expected denominator")),
        }
    }

    fn factor(&mut self, exps: &mut [u64]) -> Result<(), ParseError> {
        let at = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(name)) => name,
            _ => return Err(syntax(at, "expected a variable")),
        };
        let idx = self.vars.index_of(&name).ok_or(ParseError {
            kind: ParseErrorKind::UnknownVariable(name),
            position: at,
        })?;
        let mut e = 1u64;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(v)) => {
                    e = u64::try_from(&v).map_err(|_| ParseError {
                        kind: ParseErrorKind::ExponentOverflow,
                        position: at,
                    })?;
                    if e == 0 {
                        return Err(syntax(at, "exponent must be a positive integer"));
                    }
                }
                Some(Tok::Minus) => {
                    return Err(ParseError {
                        kind: ParseErrorKind::NegativeExponent,
                        position: at,
                    })
                }
                _ => return Err(syntax(at, "expected exponent")),
            }
        }
        exps[idx] = exps[idx].checked_add(e).ok_or(ParseError {
            kind: ParseErrorKind::ExponentOverflow,
            position: at,
        })?;
        Ok(())
    }
}

/// Parses `text` over the declared variables and returns its support.
pub fn parse_polynomial(text: &str, vars: &VariableSet) -> Result<SupportSet, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let terms = p.polynomial()?;
    let points: Vec<ExponentVector> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| ExponentVector::new(e))
        .collect();
    SupportSet::new(vars.dim(), points).map_err(|_| ParseError {
        kind: ParseErrorKind::ZeroPolynomial,
        position: 0,
    })
}

/// [`parse_polynomial`] with the declaration chosen by [`VariableSet::infer`].
pub fn parse_polynomial_auto(text: &str) -> Result<SupportSet, ParseError> {
    let vars = VariableSet::infer(text)?;
    parse_polynomial(text, &vars)
}

/// Renders a support in canonical form: unit coefficients, terms in
/// descending lexicographic order of exponents, `1` for the constant term.
pub fn print_support(s: &SupportSet, vars: &VariableSet) -> String {
    assert_eq!(s.dim(), vars.dim(), "support and declaration disagree");
    let terms: Vec<String> = s
        .points()
        .iter()
        .rev()
        .map(|m| {
            let factors: Vec<String> = m
                .coords()
                .iter()
                .zip(vars.names())
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            }
        })
        .collect();
    terms.join(" + ")
}
