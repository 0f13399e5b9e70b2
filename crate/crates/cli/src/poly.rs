//! Parser for the quadratic polynomial flag syntax: terms like
//! `p*x^2 + q*x + r` where each coefficient is an exact scalar literal
//! (so `3/5*x^2 - sqrt(2)*x + 1/2*(1+sqrt(2))` is accepted).

use kin_core::efield::{FieldElem, Quadratic};

pub fn parse_poly(src: &str) -> Result<Quadratic, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let chars: Vec<char> = s.chars().collect();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let (mut start, mut negative) = match chars[0] {
        '+' => (1, false),
        '-' => (1, true),
        _ => (0, false),
    };
    let mut i = start;
    while i < chars.len() {
        match chars[i] {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".into());
                }
            }
            '+' | '-' if depth == 0 => {
                terms.push((negative, chars[start..i].iter().collect()));
                negative = chars[i] == '-';
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    terms.push((negative, chars[start..].iter().collect()));

    let mut coeffs = [FieldElem::zero(), FieldElem::zero(), FieldElem::zero()];
    for (neg, body) in terms {
        if body.is_empty() {
            return Err("empty term".into());
        }
        let (degree, mut coeff) = parse_term(&body)?;
        if neg {
            coeff = -&coeff;
        }
        coeffs[degree] = &coeffs[degree] + &coeff;
    }
    let [c0, c1, c2] = coeffs;
    Ok(Quadratic::new(c2, c1, c0))
}

fn parse_term(body: &str) -> Result<(usize, FieldElem), String> {
    let chars: Vec<char> = body.chars().collect();
    let mut depth = 0i32;
    let mut x_at = None;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                x_at = Some(i);
                break;
            }
            _ => {}
        }
    }
    let Some(i) = x_at else {
        return Ok((0, parse_coeff(body)?));
    };
    let tail: String = chars[i + 1..].iter().collect();
    let degree = if tail.is_empty() {
        1
    } else if let Some(exp) = tail.strip_prefix('^') {
        match exp {
            "1" => 1,
            "2" => 2,
            _ => return Err(format!("unsupported exponent '^{exp}': degree is at most 2")),
        }
    } else {
        return Err(format!("unexpected '{tail}' after x"));
    };
    let head: String = chars[..i].iter().collect();
    let coeff = if head.is_empty() {
        FieldElem::one()
    } else {
        parse_coeff(head.strip_suffix('*').unwrap_or(&head))?
    };
    Ok((degree, coeff))
}

fn parse_coeff(s: &str) -> Result<FieldElem, String> {
    s.parse::<FieldElem>()
        .map_err(|e| format!("bad coefficient '{s}': {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms() {
        let p = parse_poly("4 - x^2").unwrap();
        assert_eq!(p.c2, FieldElem::from_int(-1));
        assert!(p.c1.is_zero());
        assert_eq!(p.c0, FieldElem::from_int(4));

        let q = parse_poly("3/5*x^2 + 2*x - 7").unwrap();
        assert_eq!(q.c2, "3/5".parse().unwrap());
        assert_eq!(q.c1, FieldElem::from_int(2));
        assert_eq!(q.c0, FieldElem::from_int(-7));

        let c = parse_poly("1").unwrap();
        assert!(c.c2.is_zero() && c.c1.is_zero());
        assert_eq!(c.c0, FieldElem::one());
    }

    #[test]
    fn radical_coefficients_and_repeats() {
        let p = parse_poly("sqrt(2)*x^2 - x + x + 1/2*(1+sqrt(2))").unwrap();
        assert_eq!(p.c2, FieldElem::from_int(2).sqrt_nonneg().unwrap());
        assert!(p.c1.is_zero());
        let half: FieldElem = "1/2*(1+sqrt(2))".parse().unwrap();
        assert_eq!(p.c0, half);
    }

    #[test]
    fn rejections() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^3").is_err());
        assert!(parse_poly("x^2 +").is_err());
        assert!(parse_poly("2y").is_err());
        assert!(parse_poly("(1+2").is_err());
    }
}
