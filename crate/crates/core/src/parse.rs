//! Minimal expression parser for building polynomials and rational
//! functions from readable strings.
//!
//! This exists so that long formula transcriptions live in the source as
//! close to their printed shape as possible, instead of as deeply nested
//! builder calls.  Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' exponent]
//! atom   := integer | variable | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! ```
//!
//! Multiplication is always explicit (`x0*x1`, never `x0 x1`).  Division is
//! exact rational-function division, so `1/(1-x1)` and `x0^2*x1/p^3` both
//! work; the result is normalized by [`RationalFn::new`].

use std::fmt;

use crate::poly::{rat_int, MultiPoly};
use crate::ratfn::RationalFn;
use crate::vars::VarTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    UnexpectedChar(char, usize),
    UnexpectedEnd,
    UnknownVariable(String),
    BadExponent(usize),
    DivisionByZero(usize),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnexpectedChar(c, at) => {
                write!(f, "unexpected character `{}` at byte {}", c, at)
            }
            ParseError::UnexpectedEnd => write!(f, "unexpected end of expression"),
            ParseError::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
            ParseError::BadExponent(at) => write!(f, "malformed exponent at byte {}", at),
            ParseError::DivisionByZero(at) => write!(f, "division by zero at byte {}", at),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parse an expression over `table` into a rational function.
pub fn parse_rf(table: &VarTable, input: &str) -> Result<RationalFn, ParseError> {
    let mut p = Parser {
        table,
        bytes: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::UnexpectedChar(
            p.bytes[p.pos] as char,
            p.pos,
        ));
    }
    Ok(v)
}

/// Parse an expression that must reduce to a (Laurent) polynomial.
///
/// Division by monomials is fine (normalization absorbs units); any residual
/// true denominator is a caller bug, reported as `DivisionByZero`'s sibling
/// via panic-free error mapping.
pub fn parse_poly(table: &VarTable, input: &str) -> Result<MultiPoly, ParseError> {
    let rf = parse_rf(table, input)?;
    rf.as_poly()
        .cloned()
        .ok_or_else(|| ParseError::UnknownVariable(format!("non-polynomial expression: {}", input)))
}

struct Parser<'a> {
    table: &'a VarTable,
    bytes: &'a [u8],
    pos: usize,
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

    fn expr(&mut self) -> Result<RationalFn, ParseError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.div(&f).map_err(|_| ParseError::DivisionByZero(at))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFn, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| ParseError::BadExponent(at));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let mut paren = false;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            paren = true;
        }
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let at = self.pos;
        let n = self.integer().ok_or(ParseError::BadExponent(at))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(ParseError::BadExponent(at));
            }
            self.pos += 1;
        }
        Ok(if neg { -(n as i32) } else { n as i32 })
    }

    fn integer(&mut self) -> Option<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn atom(&mut self) -> Result<RationalFn, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(v)
                    }
                    Some(c) => Err(ParseError::UnexpectedChar(c as char, self.pos)),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().ok_or(ParseError::UnexpectedEnd)?;
                Ok(RationalFn::from_poly(MultiPoly::constant(
                    self.table,
                    rat_int(n as i64),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match self.table.index_of(name) {
                    Some(_) => Ok(RationalFn::from_poly(MultiPoly::var(self.table, name))),
                    None => Err(ParseError::UnknownVariable(name.to_string())),
                }
            }
            Some(c) => Err(ParseError::UnexpectedChar(c as char, self.pos)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> VarTable {
        VarTable::master()
    }

    #[test]
    fn parses_polynomials() {
        let p = parse_poly(&t(), "(1 - x1)*(1 + x1)").unwrap();
        let q = parse_poly(&t(), "1 - x1^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parses_laurent_division() {
        let p = parse_poly(&t(), "x0^2*x1*x2/p^3").unwrap();
        assert_eq!(p.min_exp_in(t().var("p")), Some(-3));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn parses_rational() {
        let rf = parse_rf(&t(), "(p - x1*x2)/(p*(1-x1)*(1-x2)*(1-x1*x2))").unwrap();
        assert!(!rf.is_polynomial());
        // Three sign-flipping factors, so the normalized denominator is the
        // negated product.
        assert_eq!(
            rf.den(),
            &parse_poly(&t(), "(1-x1)*(1-x2)*(1-x1*x2)").unwrap().neg()
        );
    }

    #[test]
    fn unary_minus_and_nesting() {
        let a = parse_rf(&t(), "-(1 - x1)*(-1)").unwrap();
        let b = parse_rf(&t(), "1 - x1").unwrap();
        assert!(a.eq_rf(&b));
    }

    #[test]
    fn negative_exponents() {
        let p = parse_poly(&t(), "p^-1 + p^(-2)").unwrap();
        assert_eq!(p.min_exp_in(t().var("p")), Some(-2));
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(matches!(
            parse_rf(&t(), "1 + zz"),
            Err(ParseError::UnknownVariable(_))
        ));
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_rf(&t(), "1 + x1 )").is_err());
    }
}
