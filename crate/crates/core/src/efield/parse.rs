//! Literal syntax: integers, `a/b`, `sqrt(E)` (or `√(E)`), `+ - * /` and
//! parentheses. Every value printed by `Display` parses back to itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{FieldElem, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at column {col}")]
pub struct ParseFieldError {
    pub col: usize,
    pub msg: String,
}

pub(crate) fn parse(src: &str) -> Result<FieldElem, ParseFieldError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> ParseFieldError {
        ParseFieldError {
            col: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn field_err(&self, e: FieldError) -> ParseFieldError {
        self.err(&e.to_string())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
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

    fn expr(&mut self) -> Result<FieldElem, ParseFieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') || self.eat('−') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem, ParseFieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') || self.eat('·') || self.eat('×') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| ParseFieldError {
                    col: at + 1,
                    msg: e.to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem, ParseFieldError> {
        if self.eat('-') || self.eat('−') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<FieldElem, ParseFieldError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some('√') => {
                self.pos += 1;
                let v = self.primary()?;
                v.sqrt().map_err(|e| self.field_err(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(FieldElem::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                if word != "sqrt" {
                    self.pos = start;
                    return Err(self.err(&format!("unknown name '{word}'")));
                }
                if self.peek() != Some('(') {
                    return Err(self.err("expected '(' after sqrt"));
                }
                let at = self.pos;
                let v = self.primary()?;
                v.sqrt().map_err(|e| ParseFieldError {
                    col: at + 1,
                    msg: e.to_string(),
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
