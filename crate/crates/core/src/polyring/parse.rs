//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integers, declared variables, `+ - * ^`, parentheses. `/` is
//! accepted only with a nonzero constant right operand, so that printed
//! rational coefficients such as `3/2*x` read back unchanged.

use std::sync::Arc;

use num_bigint::BigInt;

use super::field::Coeff;
use super::monomial::MAX_EXPONENT;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

pub fn parse_poly(src: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(Error::Syntax { pos: at, msg: "division only by constants".into() });
                    }
                    if d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
                    }
                    let f = self.ring.field;
                    acc = acc.scale(&f.inv(&d.constant_term()));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    return Err(self.error("implicit multiplication is not allowed"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected exponent"));
            }
            let e: u64 = self.src[start..self.pos].parse().map_err(|_| Error::ExponentOverflow)?;
            if e > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow);
            }
            return base.pow(e as u32);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = self.src[start..self.pos].parse().expect("digits");
                let c: Coeff = self.ring.field.from_bigint(&v);
                Ok(Poly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || matches!(self.bytes[self.pos], b'_' | b'\''))
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, MonomialOrder};

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn reads_terms_directly() {
        let r = ring(&["x1", "x2", "x3"]);
        let p = parse_poly("x2*x3 - x1", &r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x2*x3 - x1");
    }

    #[test]
    fn zero_is_empty() {
        let r = ring(&["x"]);
        assert!(parse_poly("0", &r).unwrap().is_zero());
    }

    #[test]
    fn expands_binomial() {
        let r = ring(&["x", "y"]);
        assert_eq!(parse_poly("(x + y)^2", &r).unwrap().to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(&["x", "y"]);
        match parse_poly("x + z", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x + * y", &r), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("2x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^70000", &r), Err(Error::ExponentOverflow)));
        assert!(matches!(parse_poly("(x^40000)*(x^40000)", &r), Err(Error::ExponentOverflow)));
        assert!(matches!(parse_poly("x/y", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn fractions_round_trip() {
        let r = ring(&["x", "y"]);
        let p = parse_poly("3/2*x^2 - y/4 + 1", &r).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2 - 1/4*y + 1");
        assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
    }
}
