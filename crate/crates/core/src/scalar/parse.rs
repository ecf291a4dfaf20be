//! Parser for the scalar surface grammar — the same language `Display`
//! produces: `q` and `z` atoms, integer literals, `+ - * / ^` with the usual
//! precedence, parentheses. `z` is `zeta_m` for the modulus handed to
//! [`Scalar::parse`]; `1/2*z` parses as `(1/2)*z` (left-associative `/`).

use num::BigInt;

use super::Scalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: u32,
}

impl Scalar {
    /// Parse the grammar produced by this type's `Display`.
    pub fn parse(input: &str, m: u32) -> Result<Scalar> {
        let mut p = Parser { src: input.as_bytes(), pos: 0, m };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!(
                "trailing input at byte {}: {:?}",
                p.pos,
                &input[p.pos..]
            )));
        }
        Ok(v)
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).map_or(false, |c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.integer()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'q') => {
                self.bump();
                Ok(Scalar::q_pow(self.m, 1))
            }
            Some(b'z') => {
                self.bump();
                Ok(Scalar::zeta_pow(self.m, 1))
            }
            Some(b'(') => {
                self.bump();
                let v = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(Scalar::from_rational(self.m, num::BigRational::from(n)))
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let n = self.digits()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::Parse("exponent out of range".into()))?;
        Ok(if neg { -n } else { n })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected digits at byte {}", start)));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", text, e)))
    }
}
