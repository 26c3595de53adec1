//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' index | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Monomial, MultiPoly, MAX_VARS};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Largest exponent accepted after `^`.
const MAX_POWER: u64 = 64;

type Raw = BTreeMap<Monomial, Scalar>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: Field,
}

/// Parses `text` as a homogeneous polynomial in `x0..x{nvars-1}`.
pub fn parse_poly(text: &str, nvars: usize, field: Field) -> Result<MultiPoly> {
    if nvars == 0 || nvars > MAX_VARS {
        return Err(Error::TooManyVariables {
            got: nvars,
            max: MAX_VARS,
        });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let raw = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    MultiPoly::from_terms(field, nvars, raw)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(&v).map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn expr(&mut self) -> Result<Raw> {
        let mut acc = Raw::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            let s = self.field.from_i64(sign);
            for (m, c) in t {
                add_into(&mut acc, m, &(&c * &s));
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Raw> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                Some(b'x') | Some(b'(') | Some(b'0'..=b'9') => {
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Raw> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.small_integer()?;
            if e > MAX_POWER {
                return Err(Error::Syntax {
                    pos: at,
                    msg: format!("exponent {e} exceeds {MAX_POWER}"),
                });
            }
            let mut acc = Raw::new();
            acc.insert(Monomial::one(), self.field.one());
            for _ in 0..e {
                acc = self.mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Raw> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.small_integer()? as usize;
                if i >= self.nvars {
                    return Err(Error::VariableOutOfRange {
                        index: i,
                        nvars: self.nvars,
                    });
                }
                let mut r = Raw::new();
                r.insert(Monomial::var(i), self.field.one());
                Ok(r)
            }
            Some(b'0'..=b'9') => {
                let num = self.integer()?;
                let c = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    self.field.from_ratio(&num, &den).map_err(|e| match e {
                        Error::DivisionByZero(_) => Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        },
                        other => other,
                    })?
                } else {
                    self.field.from_bigint(&num)
                };
                let mut r = Raw::new();
                if !c.is_zero() {
                    r.insert(Monomial::one(), c);
                }
                Ok(r)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn mul(&self, a: &Raw, b: &Raw) -> Result<Raw> {
        let mut out = Raw::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                add_into(&mut out, ma.checked_mul(mb)?, &(ca * cb));
            }
        }
        Ok(out)
    }
}

fn add_into(acc: &mut Raw, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat() {
        let f = parse_poly("x0^3 + x1^3 + x2^3", 3, Field::Rational).unwrap();
        assert_eq!(f.degree(), Some(3));
        assert_eq!(f.num_terms(), 3);
    }

    #[test]
    fn rank_six_normal_form() {
        let f = parse_poly(
            "x0^3+x1^3+x2^3+x3^3+x4^3+(x0+x1+x2+x3+x4)^3",
            5,
            Field::Rational,
        )
        .unwrap();
        let m = Monomial::from_exponents(&[3, 0, 0, 0, 0]).unwrap();
        assert_eq!(f.coeff(&m), Field::Rational.from_i64(2));
        assert_eq!(f.num_terms(), 35);
    }

    #[test]
    fn inhomogeneous_rejected() {
        assert!(matches!(
            parse_poly("x0^2 + x1^3", 2, Field::Rational),
            Err(Error::Inhomogeneous(..))
        ));
    }

    #[test]
    fn out_of_range_variable() {
        assert_eq!(
            parse_poly("x0^2 + x2^2", 2, Field::Rational),
            Err(Error::VariableOutOfRange { index: 2, nvars: 2 })
        );
    }

    #[test]
    fn syntax_positions() {
        match parse_poly("x0^2 + + x1^2", 2, Field::Rational) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("(x0 + x1", 2, Field::Rational),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("1/0*x0", 1, Field::Rational),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn fractions_and_implicit_products() {
        let a = parse_poly("1/2*x0^2 - 3x0x1", 2, Field::Rational).unwrap();
        let b = parse_poly("1/2 x0^2 - 3*x0*x1", 2, Field::Rational).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2*x0^2 - 3*x0*x1");
    }

    #[test]
    fn prime_field_parse() {
        let f = parse_poly("7*x0 + 3*x1", 2, Field::prime(7).unwrap()).unwrap();
        assert_eq!(f.to_string(), "3*x1");
    }

    #[test]
    fn zero_is_accepted() {
        let z = parse_poly("x0 - x0", 1, Field::Rational).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }
}
