//! Recursive-descent parser for curve equations.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := power (['*'] power)*
//! power   := primary ['^' uint]
//! primary := int ['/' uint] | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `2x^2y` and `xyz(x+y+z)` parse as written.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Polynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at position {pos} (only x, y, z are allowed)")]
    UnknownVariable { pos: usize, name: char },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownVariable { pos, .. }
            | ParseError::NegativeExponent { pos } => *pos,
        }
    }
}

/// Parses and fully expands an expression in `x, y, z`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.unexpected(c));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn unexpected(&self, c: char) -> ParseError {
        if c.is_alphabetic() {
            ParseError::UnknownVariable {
                pos: self.pos,
                name: c,
            }
        } else {
            self.syntax(format!("unexpected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c.is_ascii_digit() || c.is_alphabetic() || c == '(' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some('-') => Err(ParseError::NegativeExponent { pos: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let e = self.uint()?;
                let e: u32 = e
                    .try_into()
                    .map_err(|_| self.syntax("exponent too large"))?;
                Ok(base.pow(e))
            }
            Some(c) => Err(self.unexpected(c)),
            None => Err(self.syntax("missing exponent")),
        }
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(self.unexpected(c)),
                    None => Err(self.syntax("missing ')'")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => {}
                        Some(c) => return Err(self.unexpected(c)),
                        None => return Err(self.syntax("missing denominator")),
                    }
                    let start = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError::Syntax {
                            pos: start,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Polynomial::constant(value))
            }
            Some(c) => {
                let v = match c {
                    'x' => Var::X,
                    'y' => Var::Y,
                    'z' => Var::Z,
                    _ => return Err(self.unexpected(c)),
                };
                self.pos += 1;
                Ok(Polynomial::var(v))
            }
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn expands_products() {
        let p = parse_polynomial("xyz(x+y+z)").unwrap();
        let expected = Polynomial::from_int_terms([(1, [2, 1, 1]), (1, [1, 2, 1]), (1, [1, 1, 2])]);
        assert_eq!(p, expected);
        let q = parse_polynomial("x^4+y^4+z^4").unwrap();
        assert_eq!(q.num_terms(), 3);
    }

    #[test]
    fn juxtaposition_and_rationals() {
        let p = parse_polynomial("2x^2y").unwrap();
        assert_eq!(p, Polynomial::from_int_terms([(2, [2, 1, 0])]));
        let q = parse_polynomial("3/4 x * z").unwrap();
        assert_eq!(
            q.coefficient(&Monomial::new(1, 0, 1)),
            BigRational::new(3.into(), 4.into())
        );
        let r = parse_polynomial("(x+y)^2 - (x-y)^2").unwrap();
        assert_eq!(r, Polynomial::from_int_terms([(4, [1, 1, 0])]));
    }

    #[test]
    fn unary_minus_positions() {
        assert_eq!(
            parse_polynomial("-x+y").unwrap(),
            parse_polynomial("y-x").unwrap()
        );
        assert_eq!(
            parse_polynomial("x(-y+z)").unwrap(),
            parse_polynomial("xz-xy").unwrap()
        );
        assert!(parse_polynomial("x*-y").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x + w"),
            Err(ParseError::UnknownVariable { pos: 4, name: 'w' })
        );
        assert_eq!(
            parse_polynomial("x^-2"),
            Err(ParseError::NegativeExponent { pos: 2 })
        );
        assert!(matches!(
            parse_polynomial("(x+y"),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse_polynomial(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x+"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0"), Err(ParseError::Syntax { .. })));
    }
}
