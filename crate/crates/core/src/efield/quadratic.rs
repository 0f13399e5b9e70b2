//! Quadratic polynomials over the field, exact sign analysis on closed
//! intervals, and the intermediate-value solver for x -> sqrt(F(x)/G(x)).

use super::parse::Parser;
use super::{FieldElem, FieldError};
use std::cmp::Ordering;

/// `c2*x^2 + c1*x + c0` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub c2: FieldElem,
    pub c1: FieldElem,
    pub c0: FieldElem,
}

impl Quadratic {
    pub fn new(c2: FieldElem, c1: FieldElem, c0: FieldElem) -> Self {
        Quadratic { c2, c1, c0 }
    }

    pub fn constant(c0: FieldElem) -> Self {
        Quadratic::new(FieldElem::zero(), FieldElem::zero(), c0)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        &(&(&self.c2 * x) + &self.c1) * x + &self.c0
    }

    /// Exact minimum over `[a, b]` (requires `a <= b`): the lesser endpoint
    /// value, or the vertex value when the parabola opens upward and its
    /// vertex falls inside the interval.
    pub fn min_on(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let at_ends = std::cmp::min(self.eval(a), self.eval(b));
        if self.c2.sign() == Ordering::Greater {
            let vertex = -&self.c1 / self.c2.double();
            if vertex.compare(a) != Ordering::Less && vertex.compare(b) != Ordering::Greater {
                return self.eval(&vertex);
            }
        }
        at_ends
    }
}

fn precondition(msg: impl Into<String>) -> FieldError {
    FieldError::PreconditionViolation(msg.into())
}

/// Exact intermediate-value solver for `g(x) = sqrt(F(x)/G(x))`.
///
/// Requires, and checks exactly: `F >= 0` and `G > 0` on `[a, b]` with
/// `a <= b`, and `y` weakly between `g(a)` and `g(b)`. Returns `c` in
/// `[a, b]` with `g(c) = y`, i.e. `F(c) - y^2*G(c) = 0` exactly; `c` is
/// strictly inside `(a, b)` whenever `y` is strictly between the endpoint
/// values, which makes `g` continuous in the order topology of the field.
pub fn ivt_sqrt_quadratic(
    f: &Quadratic,
    g: &Quadratic,
    a: &FieldElem,
    b: &FieldElem,
    y: &FieldElem,
) -> Result<FieldElem, FieldError> {
    if a.compare(b) == Ordering::Greater {
        return Err(precondition("interval requires a <= b"));
    }
    if f.min_on(a, b).sign() == Ordering::Less {
        return Err(precondition("F must be nonnegative on [a, b]"));
    }
    if g.min_on(a, b).sign() != Ordering::Greater {
        return Err(precondition("G must be positive on [a, b]"));
    }
    let ga = f.eval(a).checked_div(&g.eval(a))?.sqrt_nonneg()?;
    let gb = f.eval(b).checked_div(&g.eval(b))?.sqrt_nonneg()?;
    let (lo, hi) = if ga.compare(&gb) == Ordering::Greater {
        (&gb, &ga)
    } else {
        (&ga, &gb)
    };
    if y.compare(lo) == Ordering::Less || y.compare(hi) == Ordering::Greater {
        return Err(precondition("y must lie between the endpoint values of g"));
    }
    if y == &ga {
        return Ok(a.clone());
    }
    if y == &gb {
        return Ok(b.clone());
    }
    // y is strictly between, so p(x) = F(x) - y^2*G(x) changes sign on the
    // open interval and any root of p there solves g(x) = y.
    let y2 = y.square();
    let alpha = &f.c2 - &(&y2 * &g.c2);
    let beta = &f.c1 - &(&y2 * &g.c1);
    let gamma = &f.c0 - &(&y2 * &g.c0);
    let inside = |c: &FieldElem| {
        c.compare(a) == Ordering::Greater && c.compare(b) == Ordering::Less
    };
    if alpha.is_zero() {
        // Degenerate to a linear polynomial; it is nonconstant because it
        // takes opposite signs at the two endpoints.
        let c = -&gamma / &beta;
        debug_assert!(inside(&c));
        return Ok(c);
    }
    let disc = beta.square() - FieldElem::from_int(4) * &alpha * &gamma;
    let s = disc.sqrt_nonneg()?;
    let twice_alpha = alpha.double();
    let root1 = &(-&beta + &s) / &twice_alpha;
    let root2 = &(-&beta - &s) / &twice_alpha;
    if inside(&root1) {
        Ok(root1)
    } else if inside(&root2) {
        Ok(root2)
    } else {
        unreachable!("sign change on (a, b) guarantees an interior root")
    }
}

/// Parses a polynomial of degree at most 2 in `x`, e.g. `x^2 - 1/2*x + 3`
/// or `sqrt(2)*x`. Coefficients follow the number grammar; `sqrt` applies
/// only to constant subexpressions.
pub fn parse_quadratic(input: &str) -> Result<Quadratic, FieldError> {
    let mut p = PolyParser { inner: Parser { s: input.as_bytes(), pos: 0 } };
    let poly = p.parse_sum()?;
    p.inner.skip_ws();
    if p.inner.pos != p.inner.s.len() {
        return Err(FieldError::Parse {
            pos: p.inner.pos,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(Quadratic::new(poly.c[2].clone(), poly.c[1].clone(), poly.c[0].clone()))
}

#[derive(Clone)]
struct Poly {
    c: [FieldElem; 3],
}

impl Poly {
    fn constant(v: FieldElem) -> Self {
        Poly { c: [v, FieldElem::zero(), FieldElem::zero()] }
    }

    fn x() -> Self {
        Poly { c: [FieldElem::zero(), FieldElem::one(), FieldElem::zero()] }
    }

    fn degree(&self) -> usize {
        if !self.c[2].is_zero() {
            2
        } else if !self.c[1].is_zero() {
            1
        } else {
            0
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        Poly {
            c: [
                &self.c[0] + &other.c[0],
                &self.c[1] + &other.c[1],
                &self.c[2] + &other.c[2],
            ],
        }
    }

    fn neg(&self) -> Poly {
        Poly { c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }

    fn mul(&self, other: &Poly, at: usize) -> Result<Poly, FieldError> {
        if self.degree() + other.degree() > 2 {
            return Err(FieldError::Parse { pos: at, msg: "degree exceeds 2".into() });
        }
        let mut c = [FieldElem::zero(), FieldElem::zero(), FieldElem::zero()];
        for i in 0..3 {
            for j in 0..3 - i {
                c[i + j] = &c[i + j] + &(&self.c[i] * &other.c[j]);
            }
        }
        Ok(Poly { c })
    }
}

struct PolyParser<'a> {
    inner: Parser<'a>,
}

impl<'a> PolyParser<'a> {
    fn peek(&mut self) -> Option<u8> {
        self.inner.skip_ws();
        self.inner.s.get(self.inner.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<Poly, FieldError> {
        let mut v = self.parse_product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.inner.pos += 1;
                    v = v.add(&self.parse_product()?);
                }
                Some(b'-') => {
                    self.inner.pos += 1;
                    v = v.add(&self.parse_product()?.neg());
                }
                _ => return Ok(v),
            }
        }
    }

    fn parse_product(&mut self) -> Result<Poly, FieldError> {
        let mut v = self.parse_atom()?;
        while self.peek() == Some(b'*') {
            self.inner.pos += 1;
            let at = self.inner.pos;
            let rhs = self.parse_atom()?;
            v = v.mul(&rhs, at)?;
        }
        Ok(v)
    }

    fn parse_atom(&mut self) -> Result<Poly, FieldError> {
        let at = self.inner.pos;
        match self.peek() {
            Some(b'-') => {
                self.inner.pos += 1;
                Ok(self.parse_atom()?.neg())
            }
            Some(b'(') => {
                self.inner.pos += 1;
                let v = self.parse_sum()?;
                self.expect_close()?;
                self.parse_power(v)
            }
            Some(b'x') => {
                self.inner.pos += 1;
                self.parse_power(Poly::x())
            }
            Some(b's') => {
                if self.inner.s[self.inner.pos..].starts_with(b"sqrt") {
                    self.inner.pos += 4;
                } else {
                    return Err(FieldError::Parse { pos: at, msg: "expected 'sqrt('".into() });
                }
                self.inner.skip_ws();
                if self.inner.s.get(self.inner.pos) != Some(&b'(') {
                    return Err(FieldError::Parse { pos: self.inner.pos, msg: "expected '('".into() });
                }
                self.inner.pos += 1;
                let v = self.parse_sum()?;
                self.expect_close()?;
                if v.degree() > 0 {
                    return Err(FieldError::Parse {
                        pos: at,
                        msg: "sqrt applies only to constants here".into(),
                    });
                }
                let root = v.c[0]
                    .sqrt_nonneg()
                    .map_err(|e| FieldError::Parse { pos: at, msg: format!("{e}") })?;
                self.parse_power(Poly::constant(root))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_rational_token()?;
                self.parse_power(Poly::constant(v))
            }
            _ => Err(FieldError::Parse {
                pos: self.inner.pos,
                msg: "expected a coefficient, 'x', 'sqrt(', '(' or '-'".into(),
            }),
        }
    }

    fn parse_rational_token(&mut self) -> Result<FieldElem, FieldError> {
        // Delegate to the shared grammar: digits ('/' digits)?.
        let start = self.inner.pos;
        let mut end = start;
        while end < self.inner.s.len() && self.inner.s[end].is_ascii_digit() {
            end += 1;
        }
        let mut probe = end;
        if probe < self.inner.s.len() && self.inner.s[probe] == b'/' {
            probe += 1;
            let dstart = probe;
            while probe < self.inner.s.len() && self.inner.s[probe].is_ascii_digit() {
                probe += 1;
            }
            if probe > dstart {
                end = probe;
            }
        }
        let text = std::str::from_utf8(&self.inner.s[start..end]).unwrap();
        let v = super::parse::parse_number(text).map_err(|e| match e {
            FieldError::Parse { pos, msg } => FieldError::Parse { pos: start + pos, msg },
            other => other,
        })?;
        self.inner.pos = end;
        Ok(v)
    }

    fn expect_close(&mut self) -> Result<(), FieldError> {
        if self.peek() == Some(b')') {
            self.inner.pos += 1;
            Ok(())
        } else {
            Err(FieldError::Parse { pos: self.inner.pos, msg: "expected ')'".into() })
        }
    }

    fn parse_power(&mut self, base: Poly) -> Result<Poly, FieldError> {
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.inner.pos += 1;
        let at = self.inner.pos;
        match self.peek() {
            Some(b'0') => {
                self.inner.pos += 1;
                Ok(Poly::constant(FieldElem::one()))
            }
            Some(b'1') => {
                self.inner.pos += 1;
                Ok(base)
            }
            Some(b'2') => {
                self.inner.pos += 1;
                base.mul(&base.clone(), at)
            }
            _ => Err(FieldError::Parse { pos: at, msg: "exponent must be 0, 1 or 2".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn quad(s: &str) -> Quadratic {
        parse_quadratic(s).unwrap()
    }

    #[test]
    fn parses_polynomials() {
        let p = quad("x^2 - 1/2*x + 3");
        assert_eq!(p.c2, FieldElem::one());
        assert_eq!(p.c1, num("-1/2"));
        assert_eq!(p.c0, num("3"));
        assert_eq!(quad("2*x*x").c2, num("2"));
        assert_eq!(quad("sqrt(2)*x").c1, num("sqrt(2)"));
        assert_eq!(quad("(x-1)*(x+1)").c0, num("-1"));
        assert!(parse_quadratic("x^3").is_err());
        assert!(parse_quadratic("x*x*x").is_err());
        assert!(parse_quadratic("sqrt(x)").is_err());
    }

    #[test]
    fn interval_minimum_is_exact() {
        let p = quad("x^2 - 2*x");
        assert_eq!(p.min_on(&num("0"), &num("3")), num("-1"));
        assert_eq!(p.min_on(&num("2"), &num("3")), num("0"));
        let downward = quad("-x^2 + 1");
        assert_eq!(downward.min_on(&num("-2"), &num("1")), num("-3"));
        let line = quad("3*x - 1");
        assert_eq!(line.min_on(&num("0"), &num("2")), num("-1"));
    }

    #[test]
    fn solves_for_interior_point() {
        // g(x) = sqrt(x^2 + 2) / 1 on [0, 5]; hit y = 2 at x = sqrt(2).
        let f = quad("x^2 + 2");
        let g = quad("1");
        let c = ivt_sqrt_quadratic(&f, &g, &num("0"), &num("5"), &num("2")).unwrap();
        assert_eq!(c, num("sqrt(2)"));
        let residual = f.eval(&c) - num("2").square() * g.eval(&c);
        assert!(residual.is_zero());
    }

    #[test]
    fn solves_with_rational_denominator() {
        // g(x) = sqrt((4 - x^2) / (x + 2)) = sqrt(2 - x) on [-1, 2].
        let f = quad("4 - x^2");
        let g = quad("x + 2");
        let c = ivt_sqrt_quadratic(&f, &g, &num("-1"), &num("2"), &num("1")).unwrap();
        assert_eq!(c, num("1"));
        let y = num("sqrt(3)") / num("2");
        let c2 = ivt_sqrt_quadratic(&f, &g, &num("-1"), &num("2"), &y).unwrap();
        assert_eq!(c2, num("5/4"));
    }

    #[test]
    fn endpoint_targets_return_endpoints() {
        let f = quad("x^2 + 2");
        let g = quad("1");
        let a = num("0");
        let b = num("5");
        let ga = num("sqrt(2)");
        assert_eq!(ivt_sqrt_quadratic(&f, &g, &a, &b, &ga).unwrap(), a);
        let gb = num("sqrt(27)");
        assert_eq!(ivt_sqrt_quadratic(&f, &g, &a, &b, &gb).unwrap(), b);
    }

    #[test]
    fn rejects_violated_preconditions() {
        let f = quad("x");
        let g = quad("1");
        let bad = ivt_sqrt_quadratic(&f, &g, &num("-1"), &num("1"), &num("0"));
        assert!(matches!(bad, Err(FieldError::PreconditionViolation(_))));
        let gbad = quad("x");
        let bad2 = ivt_sqrt_quadratic(&quad("1"), &gbad, &num("0"), &num("1"), &num("1"));
        assert!(matches!(bad2, Err(FieldError::PreconditionViolation(_))));
        let bad3 = ivt_sqrt_quadratic(&quad("1"), &g, &num("1"), &num("0"), &num("1"));
        assert!(matches!(bad3, Err(FieldError::PreconditionViolation(_))));
        let bad4 = ivt_sqrt_quadratic(&quad("x^2+2"), &g, &num("0"), &num("5"), &num("10"));
        assert!(matches!(bad4, Err(FieldError::PreconditionViolation(_))));
    }

    #[test]
    fn linear_degenerate_case() {
        // F(x) = x + 1, G(x) = 1 - both linear in the combined polynomial:
        // with y^2 rational the quadratic term cancels entirely.
        let f = quad("x + 1");
        let g = quad("1");
        let c = ivt_sqrt_quadratic(&f, &g, &num("0"), &num("3"), &num("3/2")).unwrap();
        assert_eq!(c, num("5/4"));
        // alpha = 0 with x^2 on both sides: F = x^2 + x, G = x^2 + 1, y = 1.
        let f2 = quad("x^2 + 3*x");
        let g2 = quad("x^2 + 1");
        let c2 = ivt_sqrt_quadratic(&f2, &g2, &num("0"), &num("2"), &num("1")).unwrap();
        assert_eq!(c2, num("1/3"));
        let residual = f2.eval(&c2) - g2.eval(&c2);
        assert!(residual.is_zero());
    }
}
