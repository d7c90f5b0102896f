use std::sync::Arc;

use num_bigint::BigInt;

use super::{PolyError, PolyRing, Polynomial};

/// Parses a polynomial over `ring`.
///
/// ```text
/// expr   := sign? term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := base ('^' uint)?
/// base   := ident | uint | '(' expr ')'
/// ```
///
/// Division is allowed only by nonzero constants.
pub fn parse_poly(src: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ring };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() {
                        return Err(PolyError::NonConstantDivisor);
                    }
                    let c = match d.leading_term() {
                        Some((_, c)) => c.clone(),
                        None => {
                            self.pos = at;
                            return Err(PolyError::DivisionByZero);
                        }
                    };
                    acc = acc.scale(&c.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let e: u32 =
                digits.parse().map_err(|_| PolyError::Syntax { pos: start, msg: "exponent too large".into() })?;
            if e > u16::MAX as u32 {
                return Err(PolyError::ExponentOverflow);
            }
            return base.checked_pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digit string");
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(PolyError::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], Field::Rational).unwrap()
    }

    #[test]
    fn precedence_and_powers() {
        let r = ring();
        let a = parse_poly("(x + y)^2 - 2*x*y", &r).unwrap();
        let b = parse_poly("x^2 + y^2", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-x + x", &r).unwrap(), Polynomial::zero(&r));
    }

    #[test]
    fn rational_coefficients() {
        let r = ring();
        let a = parse_poly("x/2 + x/2", &r).unwrap();
        assert_eq!(a, parse_poly("x", &r).unwrap());
        assert_eq!(a.to_string(), "x");
        let c = parse_poly("-3/4*x*y^2 + z", &r).unwrap();
        assert_eq!(c.to_string(), "-3/4*x*y^2 + z");
    }

    #[test]
    fn errors_are_positioned() {
        let r = ring();
        assert!(matches!(parse_poly("x + w", &r), Err(PolyError::UnknownVariable(v)) if v == "w"));
        assert!(matches!(parse_poly("x +", &r), Err(PolyError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x / y", &r), Err(PolyError::NonConstantDivisor)));
        assert!(matches!(parse_poly("x / 0", &r), Err(PolyError::DivisionByZero)));
        assert!(matches!(parse_poly("x^70000", &r), Err(PolyError::ExponentOverflow)));
        assert!(matches!(parse_poly("x y", &r), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn prime_field_reduces_constants() {
        let r = PolyRing::new(&["x"], Field::Prime(7)).unwrap();
        assert_eq!(parse_poly("8*x", &r).unwrap(), parse_poly("x", &r).unwrap());
        assert_eq!(parse_poly("-x", &r).unwrap().to_string(), "6*x");
    }
}
