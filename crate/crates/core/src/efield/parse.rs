//! Text form of field elements.
//!
//! Grammar:
//! ```text
//! num      := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'sqrt(' num ')' | '(' num ')' | '-' factor
//! rational := integer ('/' positive-integer)?
//! ```
//! Whitespace between tokens is ignored. Formatting emits a sum of
//! products in a fixed traversal order, so it is deterministic; parsing
//! its own output recovers an equal element.

use super::{FieldElem, FieldError, Repr};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub fn parse_number(input: &str) -> Result<FieldElem, FieldError> {
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    let v = p.parse_num()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(err(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

fn err(pos: usize, msg: impl Into<String>) -> FieldError {
    FieldError::Parse { pos, msg: msg.into() }
}

pub(super) struct Parser<'a> {
    pub(super) s: &'a [u8],
    pub(super) pos: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), FieldError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.pos, format!("expected '{}'", b as char)))
        }
    }

    pub(super) fn parse_num(&mut self) -> Result<FieldElem, FieldError> {
        let mut v = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v = v + self.parse_term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    v = v - self.parse_term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn parse_term(&mut self) -> Result<FieldElem, FieldError> {
        let mut v = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            v = v * self.parse_factor()?;
        }
        Ok(v)
    }

    fn parse_factor(&mut self) -> Result<FieldElem, FieldError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.parse_factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.parse_num()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b's') => {
                let at = self.pos;
                if self.s[self.pos..].starts_with(b"sqrt") {
                    self.pos += 4;
                } else {
                    return Err(err(at, "expected 'sqrt('"));
                }
                self.expect(b'(')?;
                let v = self.parse_num()?;
                self.expect(b')')?;
                v.sqrt_nonneg()
                    .map_err(|e| err(at, format!("sqrt not evaluable here: {e}")))
            }
            Some(c) if c.is_ascii_digit() => self.parse_rational(),
            _ => Err(err(self.pos, "expected a rational, 'sqrt(', '(' or '-'")),
        }
    }

    fn parse_rational(&mut self) -> Result<FieldElem, FieldError> {
        let numer = self.parse_digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let denom = self.parse_digits()?;
            if denom.is_zero() {
                return Err(err(at, "denominator must be positive"));
            }
            Ok(FieldElem::from_rational(BigRational::new(numer, denom)))
        } else {
            Ok(FieldElem::from_rational(BigRational::from_integer(numer)))
        }
    }

    fn parse_digits(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(err(start, "expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<BigInt>().map_err(|_| err(start, "integer out of range"))
    }
}

impl FromStr for FieldElem {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_number(s)
    }
}

fn collect_terms(x: &Repr) -> Vec<(BigRational, Vec<Repr>)> {
    match x {
        Repr::Rat(q) => vec![(q.clone(), Vec::new())],
        Repr::Ext(e) => {
            let mut out = collect_terms(&e.a);
            for (c, mut rads) in collect_terms(&e.b) {
                rads.push(e.r.clone());
                out.push((c, rads));
            }
            out
        }
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_repr(f: &mut fmt::Formatter<'_>, x: &Repr) -> fmt::Result {
    let terms: Vec<_> = collect_terms(x)
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, rads)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if negative { "-" } else { "+" })?;
        }
        let mag = c.abs();
        if rads.is_empty() {
            write_rat(f, &mag)?;
        } else {
            let mut star = false;
            if !mag.is_one() {
                write_rat(f, &mag)?;
                star = true;
            }
            for r in rads {
                if star {
                    write!(f, "*")?;
                }
                write!(f, "sqrt(")?;
                write_repr(f, r)?;
                write!(f, ")")?;
                star = true;
            }
        }
    }
    Ok(())
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_repr(f, self.repr())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl FieldElem {
    /// Decimal rendering truncated toward zero after `digits` fractional
    /// digits, computed by exact bisection against rationals.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled =
            self.abs() * FieldElem::from_rational(BigRational::from_integer(scale.clone()));
        let m = floor_nonneg(&scaled);
        let (ip, fp) = num_integer::Integer::div_rem(&m, &scale);
        let mut out = String::new();
        if self.sign() == Ordering::Less && !m.is_zero() {
            out.push('-');
        }
        out.push_str(&ip.to_string());
        if digits > 0 {
            out.push('.');
            let frac = fp.to_string();
            for _ in frac.len()..digits {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }
}

/// Largest integer not exceeding a nonnegative element.
fn floor_nonneg(x: &FieldElem) -> BigInt {
    let as_elem = |n: &BigInt| FieldElem::from_rational(BigRational::from_integer(n.clone()));
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while x.compare(&as_elem(&hi)) != Ordering::Less {
        lo = hi.clone();
        hi = &hi * 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if x.compare(&as_elem(&mid)) == Ordering::Less {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

impl serde::Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for FieldElem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> FieldElem {
        parse_number(s).unwrap()
    }

    #[test]
    fn parses_grammar_forms() {
        assert_eq!(parse("3+2*sqrt(2)"), parse(" 3 + 2 * sqrt( 2 ) "));
        assert_eq!(parse("1/2*sqrt(2)"), parse("sqrt(2)") / parse("2"));
        assert_eq!(parse("-(1-sqrt(3))*2"), (parse("sqrt(3)") - parse("1")) * parse("2"));
        assert_eq!(parse("sqrt(3+2*sqrt(2))"), parse("1+sqrt(2)"));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1/0", "sqrt(2", "2**3", "1+", "sq(2)", "2 3", "1/-2"] {
            assert!(
                matches!(parse_number(bad), Err(FieldError::Parse { .. })),
                "{bad:?} should fail"
            );
        }
        assert!(matches!(
            parse_number("sqrt(1-3)"),
            Err(FieldError::Parse { .. })
        ));
    }

    #[test]
    fn format_round_trips_under_eq() {
        for s in [
            "0",
            "-7/3",
            "3+2*sqrt(2)",
            "1/2*sqrt(2)-4*sqrt(3)",
            "sqrt(1+sqrt(2))",
            "(1+sqrt(5))*(2-sqrt(5))",
            "sqrt(2)*sqrt(3)*sqrt(5)",
        ] {
            let v = parse(s);
            let printed = v.to_string();
            assert_eq!(parse(&printed), v, "round-trip through {printed:?}");
        }
    }

    #[test]
    fn decimal_rendering_is_truncated() {
        assert_eq!(parse("sqrt(3)").to_decimal(12), "1.732050807568");
        assert_eq!(parse("sqrt(2)").to_decimal(5), "1.41421");
        assert_eq!(parse("-3/2").to_decimal(3), "-1.500");
        assert_eq!(parse("0").to_decimal(2), "0.00");
        assert_eq!(parse("5/4").to_decimal(0), "1");
        assert_eq!(parse("1/1000").to_decimal(6), "0.001000");
    }

    #[test]
    fn serde_uses_literal_strings() {
        let v = parse("1+1/2*sqrt(5)");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"1+1/2*sqrt(5)\"");
        let back: FieldElem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
