//! Recursive-descent parser for the operator grammar
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'T' | 'x' | rational | '(' expr ')'
//! ```
//!
//! `T` is theta; products are evaluated in the noncommutative ring
//! Q[x]<theta> and normalized to `sum_i x^i P_i(theta)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{OpResult, OperatorError, RawThetaOp, ThetaOperator};

pub fn parse_operator(text: &str) -> OpResult<ThetaOperator> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        text,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    value.into_operator()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> OperatorError {
        let byte = self
            .chars
            .get(self.pos)
            .map(|(b, _)| *b)
            .unwrap_or(self.text.len());
        OperatorError::Syntax {
            pos: byte,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> OpResult<RawThetaOp> {
        // leniency: allow a leading sign
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> OpResult<RawThetaOp> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> OpResult<RawThetaOp> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> OpResult<RawThetaOp> {
        match self.peek() {
            Some('T') => {
                self.bump();
                Ok(RawThetaOp::theta())
            }
            Some('x') => {
                self.bump();
                Ok(RawThetaOp::x())
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(RawThetaOp::constant(self.rational()?)),
            _ => Err(self.err("expected 'T', 'x', a rational or '('")),
        }
    }

    fn uint(&mut self) -> OpResult<usize> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        digits
            .parse()
            .map_err(|_| self.err("exponent out of range"))
    }

    fn rational(&mut self) -> OpResult<BigRational> {
        let num = self.bigint()?;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.bigint()?;
            if den <= BigInt::from(0) {
                return Err(self.err("denominator must be a positive integer"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn bigint(&mut self) -> OpResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        digits.parse().map_err(|_| self.err("invalid integer"))
    }
}
