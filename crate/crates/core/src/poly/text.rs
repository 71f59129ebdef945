//! Canonical text form of polynomials.
//!
//! Printing lists terms in descending active order joined by ` + ` / ` - `.
//! A coefficient is printed through its symmetric representative, so over
//! F_5 the residue 4 prints as a subtraction of 1. Coefficient and exponent 1
//! are suppressed; zero prints as `0`.
//!
//! The parser also accepts arbitrary integers (reduced mod p), `a/b`
//! coefficients with `b` invertible, omitted `*`, and free whitespace.

use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Term};
use super::ring::PolyRing;
use crate::error::{AlgebraError, Result};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let signed = ring.field().to_signed(t.coeff);
            let mag = signed.unsigned_abs();
            match (i, signed < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, ring, mag, &t.mono)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, ring: &PolyRing, mag: u64, m: &Monomial) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{mag}");
    }
    let mut first = true;
    if mag != 1 {
        write!(f, "{mag}")?;
        first = false;
    }
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.variables()[v])?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax {
            pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Integer literal reduced mod p, plus the raw value when it fits in u64.
    fn integer(&mut self) -> Result<(u32, Option<u64>)> {
        let start = self.pos;
        let field = *self.ring.field();
        let p = field.characteristic() as u64;
        let mut residue = 0u64;
        let mut raw: Option<u64> = Some(0);
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            let d = (c - b'0') as u64;
            residue = (residue * 10 + d) % p;
            raw = raw.and_then(|r| r.checked_mul(10)).and_then(|r| r.checked_add(d));
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected integer");
        }
        Ok((residue as u32, raw))
    }

    fn exponent(&mut self) -> Result<u64> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        match self.integer()?.1 {
            Some(e) => Ok(e),
            None => self.err(at, "exponent too large"),
        }
    }

    fn identifier(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    /// Splits an identifier into a product of known variable names (omitted `*`).
    fn split_identifier(&self, ident: &str) -> Option<Vec<usize>> {
        if ident.is_empty() {
            return Some(Vec::new());
        }
        let mut candidates: Vec<(usize, usize)> = self
            .ring
            .variables()
            .iter()
            .enumerate()
            .filter(|(_, v)| ident.starts_with(v.as_str()))
            .map(|(i, v)| (i, v.len()))
            .collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1));
        for (i, len) in candidates {
            if let Some(mut rest) = self.split_identifier(&ident[len..]) {
                rest.insert(0, i);
                return Some(rest);
            }
        }
        None
    }

    /// One product of factors, starting after any sign.
    fn term(&mut self) -> Result<Term> {
        let field = *self.ring.field();
        let n = self.ring.nvars();
        let mut coeff = 1u32;
        let mut exps = vec![0u64; n];
        let mut nfactors = 0;
        loop {
            self.skip_ws();
            let at = self.pos;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let (c, _) = self.integer()?;
                    let e = self.exponent()?;
                    coeff = field.mul(coeff, field.pow(c, e));
                    self.skip_ws();
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let dat = self.pos;
                        let (d, _) = self.integer()?;
                        if d == 0 {
                            return self.err(dat, format!("denominator not invertible mod {}", field.characteristic()));
                        }
                        coeff = field.div(coeff, d);
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let ident = self.identifier();
                    let vars = match self.ring.var_index(ident) {
                        Some(i) => vec![i],
                        None => match self.split_identifier(ident) {
                            Some(v) => v,
                            None => {
                                return Err(AlgebraError::UnknownVariable {
                                    name: ident.to_string(),
                                    pos: at,
                                })
                            }
                        },
                    };
                    let e = self.exponent()?;
                    let (last, init) = vars.split_last().expect("nonempty identifier");
                    for &v in init {
                        exps[v] += 1;
                    }
                    exps[*last] += e;
                }
                _ => {
                    if nfactors == 0 {
                        return self.err(at, "expected a term");
                    }
                    break;
                }
            }
            nfactors += 1;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if !matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    return self.err(self.pos, "expected a factor after `*`");
                }
            }
        }
        let mono = Monomial::from_exponents(&exps)?;
        Ok(Term { coeff, mono })
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = field.neg(t.coeff);
            }
            terms.push(t);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return self.err(self.pos, format!("unexpected `{}`", &self.src[self.pos..=self.pos])),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_term_list(self.ring, terms))
    }
}

/// Parses polynomial text into canonical form in `ring`.
pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(AlgebraError::Syntax {
            pos,
            message: "non-ASCII input".into(),
        });
    }
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        ring,
    };
    let trimmed = text.trim();
    if trimmed == "0" {
        return Ok(Polynomial::zero(ring));
    }
    p.polynomial()
}

impl PolyRing {
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse_poly(self, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces_coefficients() {
        let r = PolyRing::new(5, &["x", "y"]).unwrap();
        let f = parse_poly(&r, "2*x^2*y - 7").unwrap();
        let t = f.terms();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].coeff, t[0].mono.exponents()), (2, &[2u16, 1][..]));
        assert_eq!((t[1].coeff, t[1].mono.exponents()), (3, &[0u16, 0][..]));
        assert!(parse_poly(&r, "x - x").unwrap().is_zero());
        assert_eq!(f.to_string(), "2*x^2*y - 2");
    }

    #[test]
    fn determinant_text() {
        let r = PolyRing::new(7, &["a", "b", "c", "d"]).unwrap();
        let f = parse_poly(&r, "a*d - b*c").unwrap();
        assert_eq!(f.len(), 2);
        // grevlex: b*c > a*d since d is the last variable
        assert_eq!(f.to_string(), "-b*c + a*d");
    }

    #[test]
    fn relaxed_syntax() {
        let r = PolyRing::new(7, &["a", "b", "c", "d"]).unwrap();
        let strict = parse_poly(&r, "3*a^2*d - b*c").unwrap();
        assert_eq!(parse_poly(&r, "  3a^2 d-bc ").unwrap(), strict);
        assert_eq!(parse_poly(&r, "3 a a d + 6bc").unwrap(), strict);
        assert_eq!(parse_poly(&r, "1/2*a").unwrap(), parse_poly(&r, "4a").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let r = PolyRing::new(5, &["x", "y"]).unwrap();
        assert_eq!(
            parse_poly(&r, "x + zz"),
            Err(AlgebraError::UnknownVariable { name: "zz".into(), pos: 4 })
        );
        assert!(matches!(parse_poly(&r, "x + + y"), Err(AlgebraError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly(&r, "x * "), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_poly(&r, "x/5"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_poly(&r, "3/5"), Err(AlgebraError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly(&r, ""), Err(AlgebraError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn zero_and_constants_print() {
        let r = PolyRing::new(5, &["x"]).unwrap();
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(parse_poly(&r, "0").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&r, "x + 1").unwrap().to_string(), "x + 1");
        assert_eq!(parse_poly(&r, "x^2 - x + 2").unwrap().to_string(), "x^2 - x + 2");
    }
}
