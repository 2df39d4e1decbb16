//! Recursive-descent parser for the textual polynomial grammar.
//!
//! ```text
//! poly   := ws [sign] term (sign term)* ws
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'x' index ['^' int]
//! ```
//!
//! Whitespace is insignificant everywhere. Like terms are merged, so the
//! result is canonical.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Polynomial, Rational};

/// Location and context of a parse failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub fragment: String,
}

impl ParseDiagnostic {
    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        let fragment: String = src[offset..].chars().take(12).collect();
        ParseDiagnostic { offset, line, column, message: message.into(), fragment }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}:{} (near {:?})", self.message, self.line, self.column, self.fragment)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::Syntax(ParseDiagnostic::at(self.src, offset, msg))
    }

    fn digits(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected digits"));
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let (start, s) = self.digits()?;
        s.parse().map_err(|_| self.error(start, "invalid integer"))
    }

    fn small_integer(&mut self) -> Result<(usize, u32)> {
        let (start, s) = self.digits()?;
        let v = s.parse().map_err(|_| self.error(start, "integer too large"))?;
        Ok((start, v))
    }

    fn factor(&mut self, coeff: &mut Rational, alpha: &mut [u32]) -> Result<()> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_at = {
                        self.skip_ws();
                        self.pos
                    };
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error(den_at, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                *coeff *= value;
                Ok(())
            }
            Some(b'x') => {
                let var_at = self.pos;
                self.pos += 1;
                if !self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error(self.pos, "expected variable index after 'x'"));
                }
                let (_, index) = self.small_integer()?;
                let index = index as usize;
                if index == 0 || index > self.n {
                    return Err(Error::VariableOutOfRange {
                        index,
                        n: self.n,
                        diagnostic: ParseDiagnostic::at(
                            self.src,
                            var_at,
                            format!("variable x{index} out of range for n = {}", self.n),
                        ),
                    });
                }
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let (at, e) = self.small_integer()?;
                    if e == 0 {
                        return Err(self.error(at, "exponent must be positive"));
                    }
                    exp = e;
                }
                alpha[index - 1] += exp;
                Ok(())
            }
            Some(_) => Err(self.error(self.pos, "expected coefficient or variable")),
            None => Err(self.error(self.pos, "unexpected end of input")),
        }
    }

    fn term(&mut self, sign: Rational, out: &mut Polynomial) -> Result<()> {
        let mut coeff = sign;
        let mut alpha = vec![0u32; self.n];
        self.factor(&mut coeff, &mut alpha)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut alpha)?;
        }
        out.add_term(MultiIndex::new(alpha), coeff);
        Ok(())
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n);
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        self.term(sign, &mut out)?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.term(Rational::one(), &mut out)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.term(-Rational::one(), &mut out)?;
                }
                Some(_) => return Err(self.error(self.pos, "expected '+', '-' or end of input")),
                None => return Ok(out),
            }
        }
    }
}

/// Parses a polynomial in the variables `x1..xn`.
pub fn parse_polynomial(src: &str, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidDimension("polynomials need n >= 1".into()));
    }
    Parser { src, bytes: src.as_bytes(), pos: 0, n }.polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, rat};

    #[test]
    fn parses_example_entry() {
        let p = parse_polynomial("-x1^2 + x1*x2 + x1", 3).unwrap();
        let x1 = Polynomial::var(3, 0);
        let x2 = Polynomial::var(3, 1);
        let expected = &(&(-x1.pow(2)) + &(&x1 * &x2)) + &x1;
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "-x1^2 + x1*x2 + x1");
    }

    #[test]
    fn zero_and_constants() {
        assert!(parse_polynomial("0", 3).unwrap().is_zero());
        assert!(parse_polynomial(" x1 - x1 ", 3).unwrap().is_zero());
        assert_eq!(parse_polynomial("-3/6", 2).unwrap(), Polynomial::constant(2, frac(-1, 2)));
        assert_eq!(parse_polynomial("2*3*x1", 1).unwrap(), Polynomial::var(1, 0).scale(&rat(6)));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_polynomial("1/2*x1^2*x3-x2", 3).unwrap();
        let b = parse_polynomial("  1 / 2 * x1 ^ 2 * x3 -   x2\n", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_variable() {
        match parse_polynomial("x1 + x4", 3) {
            Err(Error::VariableOutOfRange { index: 4, n: 3, diagnostic }) => {
                assert_eq!(diagnostic.offset, 5);
                assert_eq!(diagnostic.column, 6);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("x0", 3), Err(Error::VariableOutOfRange { .. })));
    }

    #[test]
    fn syntax_errors_carry_location() {
        for (src, offset) in [("x1 +", 4), ("x1 ** x2", 4), ("3/0", 2), ("x1^0", 3), ("x", 1), ("x1 x2", 3)] {
            match parse_polynomial(src, 3) {
                Err(Error::Syntax(d)) => {
                    assert_eq!(d.offset, offset, "{src}: {d}");
                    assert!(d.offset <= src.len());
                }
                other => panic!("{src}: unexpected {other:?}"),
            }
        }
        match parse_polynomial("x1 +\n  * x2", 2) {
            Err(Error::Syntax(d)) => assert_eq!((d.line, d.column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
