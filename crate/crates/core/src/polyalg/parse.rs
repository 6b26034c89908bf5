//! Parser for the textual polynomial format produced by `Display`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | ident ('^' integer)?
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Rational};

pub fn parse_poly(input: &str) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty input"));
    }
    let mut acc = MultiPoly::zero();
    let mut first = true;
    loop {
        p.skip_ws();
        let negative = match p.peek() {
            Some(b'+') => {
                p.pos += 1;
                false
            }
            Some(b'-') => {
                p.pos += 1;
                true
            }
            None => break,
            Some(_) if first => false,
            Some(_) => return Err(p.error("expected `+` or `-`")),
        };
        first = false;
        let term = p.term()?;
        acc = if negative { &acc - &term } else { &acc + &term };
    }
    Ok(acc)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.checked_mul(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                self.skip_ws();
                let denom = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(MultiPoly::constant(Rational::new(numer, denom)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let var = MultiPoly::var(name);
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.integer()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                    var.pow(e)
                } else {
                    Ok(var)
                }
            }
            _ => Err(self.error("expected a number or a variable")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_printed_form() {
        let p = parse_poly("256*u0^3 - 128*u0^2*alpha0 + 1/2").unwrap();
        assert_eq!(p.to_string(), "256*u0^3 - 128*u0^2*alpha0 + 1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_poly(""), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("x +"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("x y"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("1/0"), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn leading_sign_and_spacing() {
        let p = parse_poly(" - x ^ 2*y +3").unwrap();
        assert_eq!(p.to_string(), "-x^2*y + 3");
    }
}
