//! Text and JSON encodings of polynomials.
//!
//! Human form: `x^4 + 24*x^3 - 2*x + 1`, `3/4*x^2 - 1/2`. Machine form: a
//! JSON array of decimal coefficient strings in ascending exponent order,
//! e.g. `["1", "-2", "0", "24", "1"]`; rationals are written `n/d`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly, RatPoly};

/// Inputs with a larger exponent are rejected rather than allocated.
pub const MAX_PARSE_DEGREE: usize = 65_536;

fn rat_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_rat_poly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if i == 0 {
            out.push_str(&rat_to_string(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{}*{}", rat_to_string(&a), mono);
        }
    }
    out
}

pub fn format_int_poly(p: &IntPoly) -> String {
    format_rat_poly(&p.to_rat())
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            std::str::from_utf8(&self.s[start..self.pos]).ok()
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }
}

fn parse_number(lx: &mut Lexer<'_>) -> Result<Option<BigRational>> {
    let Some(n) = lx.digits() else {
        return Ok(None);
    };
    let num: BigInt = n.parse().map_err(|_| lx.err("bad integer"))?;
    if lx.eat(b'/') {
        let d = lx.digits().ok_or_else(|| lx.err("expected denominator"))?;
        let den: BigInt = d.parse().map_err(|_| lx.err("bad integer"))?;
        if den.is_zero() {
            return Err(lx.err("zero denominator"));
        }
        Ok(Some(BigRational::new(num, den)))
    } else {
        Ok(Some(BigRational::from_integer(num)))
    }
}

fn parse_exponent(lx: &mut Lexer<'_>) -> Result<usize> {
    if !lx.eat(b'^') {
        return Ok(1);
    }
    let d = lx.digits().ok_or_else(|| lx.err("expected exponent"))?;
    let e: usize = d.parse().map_err(|_| lx.err("exponent too large"))?;
    if e > MAX_PARSE_DEGREE {
        return Err(lx.err("exponent too large"));
    }
    Ok(e)
}

/// Parses the human form. Accepts `*` between coefficient and `x` as
/// optional, repeated exponents (summed), and any term order.
pub fn parse_rat_poly(text: &str) -> Result<RatPoly> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(usize, BigRational)> = Vec::new();
    let mut first = true;
    loop {
        let neg = match lx.peek() {
            None if !first => break,
            None => return Err(lx.err("empty polynomial")),
            Some(b'+') if !first => {
                lx.pos += 1;
                false
            }
            Some(b'-') => {
                lx.pos += 1;
                true
            }
            Some(_) if first => false,
            Some(_) => return Err(lx.err("expected + or -")),
        };
        first = false;
        let coeff = parse_number(&mut lx)?;
        let has_x = if coeff.is_some() {
            if lx.eat(b'*') {
                if !lx.eat(b'x') {
                    return Err(lx.err("expected x"));
                }
                true
            } else {
                lx.eat(b'x')
            }
        } else if lx.eat(b'x') {
            true
        } else {
            return Err(lx.err("expected term"));
        };
        let e = if has_x { parse_exponent(&mut lx)? } else { 0 };
        let mut c = coeff.unwrap_or_else(BigRational::one);
        if neg {
            c = -c;
        }
        terms.push((e, c));
    }
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (e, c) in terms {
        coeffs[e] += c;
    }
    Ok(Poly::new(coeffs))
}

pub fn parse_int_poly(text: &str) -> Result<IntPoly> {
    rat_to_int(&parse_rat_poly(text)?)
}

fn rat_to_int(p: &RatPoly) -> Result<IntPoly> {
    if p.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::Parse("expected integer coefficients".into()));
    }
    Ok(Poly::new(
        p.coeffs().iter().map(|c| c.to_integer()).collect(),
    ))
}

pub fn rat_poly_to_json(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

pub fn int_poly_to_json(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_rat_token(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    let signed_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(signed_int(s)?)),
        Some((n, d)) => {
            let den = signed_int(d)?;
            if den.is_zero() || den.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(signed_int(n)?, den))
        }
    }
}

pub fn rat_poly_from_strings(items: &[String]) -> Result<RatPoly> {
    if items.len() > MAX_PARSE_DEGREE + 1 {
        return Err(Error::Parse("too many coefficients".into()));
    }
    let coeffs = items
        .iter()
        .map(|s| parse_rat_token(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

pub fn rat_poly_from_json(text: &str) -> Result<RatPoly> {
    let items: Vec<String> = serde_json::from_str(text)?;
    rat_poly_from_strings(&items)
}

pub fn int_poly_from_json(text: &str) -> Result<IntPoly> {
    rat_to_int(&rat_poly_from_json(text)?)
}

/// Accepts either encoding: a leading `[` selects JSON.
pub fn parse_any_rat(text: &str) -> Result<RatPoly> {
    if text.trim_start().starts_with('[') {
        rat_poly_from_json(text)
    } else {
        parse_rat_poly(text)
    }
}

pub fn parse_any_int(text: &str) -> Result<IntPoly> {
    rat_to_int(&parse_any_rat(text)?)
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_poly_to_json(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        let p = rat_poly_from_strings(&items).map_err(serde::de::Error::custom)?;
        rat_to_int(&p).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_poly_to_json(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        rat_poly_from_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        let digits = s.strip_prefix('-').unwrap_or(&s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(serde::de::Error::custom(format!("bad integer `{s}`")));
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing rationals as `n/d` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rat_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat_token(&s).map_err(serde::de::Error::custom)
    }
}

pub fn format_rational(q: &BigRational) -> String {
    rat_to_string(q)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    parse_rat_token(s)
}
