//! Canonical text form of scalars and its parser.
//!
//! Terms are written in descending grlex order, e.g. `2*t1^(3/2)*t2^-1 - q + 1`.
//! Half-integer exponents are rendered as `^(k/2)`. A scalar with a
//! nontrivial denominator is written `(num)/(den)`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::poly::{Mono, Poly, Var, NVARS};
use super::scalar::GroundScalar;

/// Largest doubled exponent accepted in text, per variable and monomial.
pub const MAX_TEXT_EXPONENT: i32 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn render_exp(out: &mut String, d: i32) {
    if d == 2 {
        return;
    }
    if d % 2 == 0 {
        let _ = write!(out, "^{}", d / 2);
    } else {
        let _ = write!(out, "^({}/2)", d);
    }
}

pub fn render_mono(m: &Mono) -> String {
    let mut out = String::new();
    for v in Var::ALL {
        let d = m.exp(v);
        if d == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(v.name());
        render_exp(&mut out, d);
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let a = c.abs();
        if m.is_one() {
            let _ = write!(out, "{}", a);
        } else if a.is_one() {
            out.push_str(&render_mono(m));
        } else {
            let _ = write!(out, "{}*{}", a, render_mono(m));
        }
    }
    out
}

pub fn render_scalar(x: &GroundScalar) -> String {
    if x.den().is_one() {
        render_poly(x.num())
    } else {
        format!("({})/({})", render_poly(x.num()), render_poly(x.den()))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<i32, ParseError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i32 = match d.parse() {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    /// Exponent after '^', returned doubled.
    fn exponent(&mut self) -> Result<i32, ParseError> {
        let e = self.raw_exponent()?;
        if e.abs() > MAX_TEXT_EXPONENT {
            return self.err("exponent out of range");
        }
        Ok(e)
    }

    fn raw_exponent(&mut self) -> Result<i32, ParseError> {
        let doubled = if self.eat(b'(') {
            let k = self.small_int()?;
            if self.eat(b'/') {
                let d = self.digits()?;
                match d {
                    "2" => {
                        self.expect(b')')?;
                        return Ok(k);
                    }
                    "1" => k.checked_mul(2),
                    _ => return self.err("only halves are representable"),
                }
            } else {
                k.checked_mul(2)
            }
            .map(|v| (v, true))
        } else {
            self.small_int()?.checked_mul(2).map(|v| (v, false))
        };
        match doubled {
            Some((v, paren)) => {
                if paren {
                    self.expect(b')')?;
                }
                Ok(v)
            }
            None => self.err("exponent out of range"),
        }
    }

    fn var(&mut self) -> Result<Option<Var>, ParseError> {
        self.ws();
        let rest = &self.s[self.pos..];
        for v in Var::ALL {
            let n = v.name().as_bytes();
            if rest.starts_with(n) {
                let after = rest.get(n.len()).copied();
                if after.is_some_and(|c| c.is_ascii_alphanumeric()) {
                    continue;
                }
                self.pos += n.len();
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    fn factor(&mut self, acc: &mut [i32; NVARS]) -> Result<bool, ParseError> {
        let Some(v) = self.var()? else { return Ok(false) };
        let e = if self.eat(b'^') { self.exponent()? } else { 2 };
        let slot = &mut acc[v.index()];
        *slot = match slot.checked_add(e) {
            Some(x) if x.abs() <= MAX_TEXT_EXPONENT => x,
            _ => return self.err("exponent out of range"),
        };
        Ok(true)
    }

    fn term(&mut self) -> Result<(Mono, BigInt), ParseError> {
        self.ws();
        let mut coeff = BigInt::one();
        let mut e = [0i32; NVARS];
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let d = self.digits()?;
            coeff = d.parse().expect("digits parse");
            if !self.eat(b'*') {
                return Ok((Mono(e), coeff));
            }
        }
        if !self.factor(&mut e)? {
            return self.err("expected a variable");
        }
        loop {
            let save = self.pos;
            if self.eat(b'*') {
                if !self.factor(&mut e)? {
                    self.pos = save;
                    return self.err("expected a variable after '*'");
                }
            } else {
                break;
            }
        }
        Ok((Mono(e), coeff))
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(Poly::from_terms(terms))
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos == self.s.len()
    }
}

/// Parse a polynomial in canonical (or any equivalent) text form.
pub fn parse_poly(s: &str) -> Result<Poly, ParseError> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let p = c.poly()?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(p)
}

/// Parse `poly`, `(poly)` or `(poly)/(poly)`.
pub fn parse_scalar(s: &str) -> Result<GroundScalar, ParseError> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let num = if c.eat(b'(') {
        let p = c.poly()?;
        c.expect(b')')?;
        p
    } else {
        c.poly()?
    };
    let den = if c.eat(b'/') {
        c.expect(b'(')?;
        let p = c.poly()?;
        c.expect(b')')?;
        p
    } else {
        Poly::one()
    };
    if !c.at_end() {
        return c.err("trailing input");
    }
    if den.is_zero() {
        return c.err("zero denominator");
    }
    bounded(GroundScalar::new(num, den).map_err(|e| ParseError { pos: 0, msg: e.to_string() })?)
}

/// Reduction can move exponents, so the canonical form is bounded as well; this keeps
/// `parse(render(x))` defined for every parsed `x`.
fn bounded(x: GroundScalar) -> Result<GroundScalar, ParseError> {
    let big = |p: &Poly| p.terms().iter().any(|(m, _)| m.0.iter().any(|e| e.abs() > MAX_TEXT_EXPONENT));
    if big(x.num()) || big(x.den()) {
        return Err(ParseError { pos: 0, msg: "exponent out of range after reduction".into() });
    }
    Ok(x)
}

/// Parse a JSON-schema numerator/denominator pair.
pub fn parse_fraction(num: &str, den: &str) -> Result<GroundScalar, ParseError> {
    let n = parse_poly(num)?;
    let d = parse_poly(den)?;
    if d.is_zero() {
        return Err(ParseError { pos: 0, msg: "zero denominator".into() });
    }
    bounded(GroundScalar::new(n, d).map_err(|e| ParseError { pos: 0, msg: e.to_string() })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_exponent_rendering() {
        let x = GroundScalar::var_half(Var::T1, 3);
        assert_eq!(render_scalar(&x), "t1^(3/2)");
        let y = GroundScalar::var(Var::T1, -1);
        assert_eq!(render_scalar(&y), "t1^-1");
    }

    #[test]
    fn exponent_limits() {
        assert!(parse_scalar("t1^4096").is_err());
        assert!(parse_scalar("t1^2048*t1^1").is_err());
        assert!(parse_scalar("(t1^1500*t2^-1500 - 1)/(t1^-1500 - t2^1500)").is_err());
        let x = parse_scalar("(t1^1024 - 1)/(t1^1023 - 1)").unwrap();
        assert_eq!(parse_scalar(&render_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn roundtrip_examples() {
        for s in ["0", "1", "-1", "t1^(3/2)*t2^-1 - 2*q + 1", "(u - 1)/(t1^2 - 1)", "a^(-1/2)"] {
            let x = parse_scalar(s).unwrap();
            let again = parse_scalar(&render_scalar(&x)).unwrap();
            assert_eq!(x, again, "{s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("t3").is_err());
        assert!(parse_scalar("(1)/(0)").is_err());
        assert!(parse_scalar("t1^(1/3)").is_err());
        assert!(parse_scalar("t1 +").is_err());
        assert!(parse_scalar("t1^99999999999").is_err());
    }
}
