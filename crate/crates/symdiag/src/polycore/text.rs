//! Text form of polynomials and ideals.
//!
//! A term prints as `c * x[j,i]^e * …` with 1-based point and coordinate
//! indices; the coefficient is always present (`p` or `p/q`), exponent 1 is
//! implicit, and terms are joined by ` + ` in descending grevlex order.  The
//! zero polynomial prints as `0`.  An ideal serialises as a JSON array of
//! polynomial strings (its current generators).
//!
//! The parser accepts the printed forms plus natural variations: optional
//! coefficients, `-` between terms, and whitespace freedom.

use super::{Ideal, Monomial, PolyRing, Polynomial};
use crate::Rat;
use num::traits::One;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at byte {1}")]
    Unexpected(char, usize),
    #[error("malformed number at byte {0}")]
    BadNumber(usize),
    #[error("variable index out of range: x[{0},{1}]")]
    BadVariable(usize, usize),
    #[error("unexpected end of input")]
    Eof,
}

impl PolyRing {
    /// Name of a variable for printing.
    pub fn var_name(&self, v: usize) -> String {
        match self.var_info(v) {
            Some((j, i)) => format!("x[{},{}]", j + 1, i + 1),
            None => "t".to_string(),
        }
    }

    /// Render a polynomial in the canonical text form.
    pub fn poly_string(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let mut piece = vec![rat_string(c)];
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    piece.push(self.var_name(v));
                } else {
                    piece.push(format!("{}^{}", self.var_name(v), e));
                }
            }
            parts.push(piece.join(" * "));
        }
        parts.join(" + ")
    }

    /// Parse a polynomial from text.
    pub fn parse_poly(&self, s: &str) -> Result<Polynomial, ParseError> {
        Parser { ring: self, bytes: s.as_bytes(), pos: 0 }.poly()
    }

    /// Render an ideal as a JSON array of generator strings.
    pub fn ideal_json(&self, i: &Ideal) -> serde_json::Value {
        serde_json::Value::Array(
            i.gens()
                .iter()
                .map(|g| serde_json::Value::String(self.poly_string(g)))
                .collect(),
        )
    }

    /// Parse an ideal from a JSON array of generator strings.
    pub fn ideal_from_json(&self, v: &serde_json::Value) -> Result<Ideal, ParseError> {
        let arr = v.as_array().ok_or(ParseError::Eof)?;
        let mut gens = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item.as_str().ok_or(ParseError::Eof)?;
            gens.push(self.parse_poly(s)?);
        }
        Ok(Ideal::new(*self, gens))
    }
}

fn rat_string(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => Err(ParseError::Unexpected(c as char, self.pos)),
                None => Err(ParseError::Eof),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::BadNumber(start));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::BadNumber(start))
    }

    fn usize_num(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::BadNumber(start));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::BadNumber(start))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let n = self.integer()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let d = self.integer()?;
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    /// `x[j,i]` with optional `^e`; returns (var index, exponent).
    fn var_power(&mut self) -> Result<(usize, u16), ParseError> {
        self.expect(b'x')?;
        self.expect(b'[')?;
        self.skip_ws();
        let j = self.usize_num()?;
        self.skip_ws();
        self.expect(b',')?;
        self.skip_ws();
        let i = self.usize_num()?;
        self.skip_ws();
        self.expect(b']')?;
        if j == 0 || i == 0 || j > self.ring.points || i > self.ring.coords {
            return Err(ParseError::BadVariable(j, i));
        }
        let v = self.ring.var(j - 1, i - 1);
        self.skip_ws();
        let e = if self.eat(b'^') {
            self.skip_ws();
            let e = self.usize_num()?;
            u16::try_from(e).map_err(|_| ParseError::BadNumber(self.pos))?
        } else {
            1
        };
        Ok((v, e))
    }

    /// One term: `[c] [* x[j,i]^e]*` (coefficient or at least one factor).
    fn term(&mut self) -> Result<(Monomial, Rat), ParseError> {
        self.skip_ws();
        let mut coeff = Rat::one();
        let mut exps = vec![0u16; self.ring.nvars()];
        let mut saw_anything = false;
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            coeff = self.rational()?;
            saw_anything = true;
        }
        loop {
            self.skip_ws();
            let save = self.pos;
            let star = self.eat(b'*');
            self.skip_ws();
            if self.peek() == Some(b'x') {
                let (v, e) = self.var_power()?;
                exps[v] += e;
                saw_anything = true;
            } else {
                if star {
                    self.pos = save;
                }
                break;
            }
        }
        if !saw_anything {
            return match self.peek() {
                Some(c) => Err(ParseError::Unexpected(c as char, self.pos)),
                None => Err(ParseError::Eof),
            };
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        self.skip_ws();
        let mut sign = if self.eat(b'-') {
            -Rat::one()
        } else {
            Rat::one()
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            self.skip_ws();
            if self.eat(b'+') {
                self.skip_ws();
                sign = if self.eat(b'-') { -Rat::one() } else { Rat::one() };
            } else if self.eat(b'-') {
                sign = -Rat::one();
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(ParseError::Unexpected(
                self.bytes[self.pos] as char,
                self.pos,
            ));
        }
        let p = Polynomial::from_terms(terms);
        // "0" parses as the single term 0 * 1 → empty polynomial.
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratq};

    #[test]
    fn print_parse_roundtrip() {
        let r = PolyRing::new(2, 2);
        let x11 = r.var_poly(r.var(0, 0));
        let x21 = r.var_poly(r.var(1, 0));
        let f = x11
            .mul(&x11)
            .scale(&ratq(-3, 2))
            .add(&x21.scale(&rat(5)))
            .add(&Polynomial::constant(&r, rat(7)));
        let s = r.poly_string(&f);
        assert_eq!(s, "-3/2 * x[1,1]^2 + 5 * x[2,1] + 7");
        let back = r.parse_poly(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parse_variations() {
        let r = PolyRing::new(2, 2);
        let x11 = r.var_poly(r.var(0, 0));
        let x22 = r.var_poly(r.var(1, 1));
        let want = x11.mul(&x11).sub(&x22.scale(&ratq(1, 3)));
        for s in [
            "x[1,1]^2 - 1/3 * x[2,2]",
            "1 * x[1,1]^2 + -1/3 * x[2,2]",
            "x[1,1] * x[1,1] - 1/3*x[2,2]",
        ] {
            assert_eq!(r.parse_poly(s).unwrap(), want, "input {s:?}");
        }
        assert_eq!(r.parse_poly("0").unwrap(), Polynomial::zero());
        assert_eq!(r.poly_string(&Polynomial::zero()), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        let r = PolyRing::new(2, 2);
        assert!(r.parse_poly("x[3,1]").is_err());
        assert!(r.parse_poly("x[0,1]").is_err());
        assert!(r.parse_poly("1 +").is_err());
        assert!(r.parse_poly("y").is_err());
        assert!(r.parse_poly("1 * * x[1,1]").is_err());
    }

    #[test]
    fn ideal_json_roundtrip() {
        let r = PolyRing::new(2, 2);
        let i = super::super::Ideal::pairwise_diagonal(r, 0, 1);
        let v = r.ideal_json(&i);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1 * x[1,1] + -1 * x[2,1]","1 * x[1,2] + -1 * x[2,2]"]"#);
        let back = r.ideal_from_json(&v).unwrap();
        assert_eq!(back, i);
    }
}
