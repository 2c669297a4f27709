//! The expression language:
//!
//! ```text
//! expr := ['+'|'-'] term (('+'|'-') term)*
//! term := [uint '*'] atom
//! atom := 'Sigma(' uint ',' uint ',' uint ')' | 'Y(' uint ')'
//!       | 'M(' rational ',' rational (';' rational ',' rational)* ')'
//!       | 'I[' rational ']' | '@' path
//! ```
//!
//! Whitespace is ignored everywhere except inside a path, which runs to the
//! next whitespace character or the end of the input.

use std::fmt;
use std::path::PathBuf;

use super::brieskorn::BrieskornParams;
use crate::monotone::MonotoneRoot;
use crate::rational::{fmt_q, parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {column}: {msg}")]
pub struct ParseError {
    /// 1-based, in characters.
    pub column: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Sigma(BrieskornParams),
    Y(u32),
    M(MonotoneRoot),
    Shift(Q),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// Signed, never zero.
    pub coefficient: i64,
    pub atom: Atom,
    /// 1-based column of the atom.
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Sigma(p) => write!(f, "{p}"),
            Atom::Y(i) => write!(f, "Y({i})"),
            Atom::M(m) => write!(f, "{m}"),
            Atom::Shift(d) => write!(f, "I[{}]", fmt_q(d)),
            Atom::File(p) => write!(f, "@{}", p.display()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coefficient {
            1 => write!(f, "{}", self.atom),
            -1 => write!(f, "-{}", self.atom),
            c => write!(f, "{c}*{}", self.atom),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            match (k, t.coefficient < 0) {
                (0, _) => write!(f, "{t}")?,
                (_, true) => write!(f, " - {}", Term { coefficient: -t.coefficient, ..t.clone() })?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: at + 1, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("`{x}`"));
            self.err(self.pos, format!("expected `{c}`, found {found}"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.ws();
        let k: Vec<char> = kw.chars().collect();
        if self.chars[self.pos..].starts_with(&k) {
            self.pos += k.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<(u64, usize), ParseError> {
        self.ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an unsigned integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(v) => Ok((v, start)),
            Err(_) => self.err(start, format!("integer `{s}` is too large")),
        }
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        self.ws();
        let start = self.pos;
        let mut s = String::new();
        if let Some(&c) = self.chars.get(self.pos).filter(|c| **c == '-' || **c == '+') {
            s.push(c);
            self.pos += 1;
        }
        loop {
            self.ws();
            match self.chars.get(self.pos) {
                Some(&c) if c.is_ascii_digit() || c == '/' => {
                    s.push(c);
                    self.pos += 1;
                }
                _ => break,
            }
        }
        match parse_q(&s) {
            Ok(x) => Ok(x),
            Err(e) => self.err(start, e),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        self.ws();
        let start = self.pos;
        if self.keyword("Sigma") {
            self.expect('(')?;
            let (a, _) = self.uint()?;
            self.expect(',')?;
            let (b, _) = self.uint()?;
            self.expect(',')?;
            let (c, _) = self.uint()?;
            self.expect(')')?;
            return match BrieskornParams::new(a, b, c) {
                Ok(p) => Ok(Atom::Sigma(p)),
                Err(e) => self.err(start, e.to_string()),
            };
        }
        if self.keyword("Y") {
            self.expect('(')?;
            let (i, at) = self.uint()?;
            self.expect(')')?;
            return match u32::try_from(i) {
                Ok(i) if i >= 1 => Ok(Atom::Y(i)),
                _ => self.err(at, format!("basis index must be in 1..={}", u32::MAX)),
            };
        }
        if self.keyword("M") {
            self.expect('(')?;
            let mut params = Vec::new();
            loop {
                let h = self.rational()?;
                self.expect(',')?;
                let r = self.rational()?;
                params.push((h, r));
                if !self.eat(';') {
                    break;
                }
            }
            self.expect(')')?;
            return match MonotoneRoot::new(params) {
                Ok(m) => Ok(Atom::M(m)),
                Err(e) => self.err(start, e.to_string()),
            };
        }
        if self.keyword("I") {
            self.expect('[')?;
            let d = self.rational()?;
            self.expect(']')?;
            return Ok(Atom::Shift(d));
        }
        if self.eat('@') {
            let from = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| !c.is_whitespace()) {
                self.pos += 1;
            }
            if from == self.pos {
                return self.err(from, "expected a path after `@`");
            }
            return Ok(Atom::File(self.chars[from..self.pos].iter().collect::<String>().into()));
        }
        self.err(start, "expected Sigma(..), Y(..), M(..), I[..] or @path")
    }

    fn term(&mut self, sign: i64) -> Result<Term, ParseError> {
        let mut weight = 1;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let (w, at) = self.uint()?;
            if w == 0 {
                return self.err(at, "weight must be nonzero");
            }
            weight = i64::try_from(w).or_else(|_| self.err(at, "weight is too large"))?;
            self.expect('*')?;
        }
        self.ws();
        let column = self.pos + 1;
        let atom = self.atom()?;
        Ok(Term { coefficient: sign * weight, atom, column })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        let mut terms = Vec::new();
        loop {
            terms.push(self.term(sign)?);
            sign = match self.peek() {
                None => break,
                Some('+') => 1,
                Some('-') => -1,
                Some(c) => return self.err(self.pos, format!("expected `+`, `-` or end of input, found `{c}`")),
            };
            self.pos += 1;
        }
        Ok(Expr { terms })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    if p.peek().is_none() {
        return p.err(p.pos, "empty expression");
    }
    p.expr()
}
