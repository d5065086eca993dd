//! Polynomial text grammar.
//!
//! Terms are joined by `+`/`-`; a term is a `*`-separated product of
//! factors. A factor is a declared variable with an optional `^exponent`,
//! an integer coefficient in the canonical encoding, a power of `a`, or a
//! parenthesised element expression such as `(a^2+1)`.

use super::{Monomial, PolyError, Polynomial};
use crate::gf::FieldSpec;
use std::sync::Arc;

pub fn parse_polynomial(
    field: &Arc<FieldSpec>,
    vars: &Arc<[String]>,
    text: &str,
) -> Result<Polynomial, PolyError> {
    Parser {
        field,
        vars,
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    field: &'a Arc<FieldSpec>,
    vars: &'a Arc<[String]>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::SyntaxError(format!("{msg} at position {}", self.pos))
    }

    fn parse(mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.field, self.vars);
        let mut negate = false;
        if self.peek() == Some('-') {
            self.bump();
            negate = true;
        }
        loop {
            let term = self.parse_term()?;
            let term = if negate { term.neg() } else { term };
            acc = acc.add(&term).expect("same field and variables");
            match self.bump() {
                None => return Ok(acc),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(c) => return Err(self.err(&format!("unexpected `{c}`"))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial, PolyError> {
        let mut coef = 1u16;
        let mut exps = vec![0u16; self.vars.len()];
        loop {
            match self.peek() {
                Some('(') => {
                    self.bump();
                    let start = self.pos;
                    let mut depth = 1;
                    while let Some(c) = self.peek() {
                        if c == '(' {
                            depth += 1;
                        } else if c == ')' {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        self.pos += 1;
                    }
                    if self.peek() != Some(')') {
                        return Err(self.err("unbalanced parenthesis"));
                    }
                    let inner: String = self.chars[start..self.pos].iter().collect();
                    self.bump();
                    let v = self
                        .field
                        .parse_element(&inner)
                        .map_err(|e| PolyError::SyntaxError(e.to_string()))?;
                    coef = self.field.mul(coef, v);
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.parse_uint()?;
                    if n >= self.field.order() as u64 {
                        return Err(self.err(&format!("{n} is not an element encoding")));
                    }
                    coef = self.field.mul(coef, n as u16);
                }
                Some(c) if c.is_alphabetic() => {
                    let name = self.parse_ident();
                    let exp = if self.peek() == Some('^') {
                        self.bump();
                        let e = self.parse_uint()?;
                        if e > u16::MAX as u64 {
                            return Err(self.err("exponent too large"));
                        }
                        e as u16
                    } else {
                        1
                    };
                    if let Some(i) = self.vars.iter().position(|v| *v == name) {
                        exps[i] = exps[i]
                            .checked_add(exp)
                            .ok_or_else(|| self.err("exponent too large"))?;
                    } else if name == "a" {
                        coef = self.field.mul(coef, self.field.pow(self.field.alpha(), exp as u64));
                    } else {
                        return Err(PolyError::UnknownVariable(name));
                    }
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Polynomial::term(
            self.field,
            self.vars,
            Monomial::new(&exps),
            coef,
        ))
    }

    fn parse_uint(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad number"))
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            // A trailing digit run belongs to the identifier only if the
            // name starts alphabetic, which it does here.
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}
