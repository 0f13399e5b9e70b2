//! Display-only decimal rendering of exact scalars. The digits are found
//! by exact integer bracketing of the scaled value, so the string is a
//! truncation of the true decimal expansion; nothing here feeds back into
//! computation.

use kin_core::efield::FieldElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

fn cmp_int(x: &FieldElem, n: &BigInt) -> Ordering {
    x.compare(&FieldElem::from_rational(BigRational::from_integer(n.clone())))
}

/// `digits` fractional digits of `x`, truncated toward zero.
pub fn decimal_approx(x: &FieldElem, digits: usize) -> String {
    let negative = x.sign() == Ordering::Less;
    let mut scaled = x.abs();
    let ten = FieldElem::from_int(10);
    for _ in 0..digits {
        scaled = &scaled * &ten;
    }
    let mut hi = BigInt::one();
    while cmp_int(&scaled, &hi) != Ordering::Less {
        hi *= 2;
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if cmp_int(&scaled, &mid) == Ordering::Less {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let shift = num_traits::pow(BigInt::from(10), digits);
    let whole = &lo / &shift;
    let frac = &lo % &shift;
    let mut out = String::new();
    if negative && !lo.is_zero() {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let f = frac.to_string();
        for _ in f.len()..digits {
            out.push('0');
        }
        out.push_str(&f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_digits_of_radicals() {
        let sqrt3 = FieldElem::from_int(3).sqrt_nonneg().unwrap();
        assert_eq!(decimal_approx(&sqrt3, 12), "1.732050807568");
        assert_eq!(decimal_approx(&sqrt3, 3), "1.732");
        assert_eq!(decimal_approx(&sqrt3, 0), "1");
        assert_eq!(decimal_approx(&-&sqrt3, 4), "-1.7320");
    }

    #[test]
    fn exact_rationals_and_zero() {
        let q: FieldElem = "5/4".parse().unwrap();
        assert_eq!(decimal_approx(&q, 6), "1.250000");
        assert_eq!(decimal_approx(&FieldElem::zero(), 3), "0.000");
        let tiny: FieldElem = "-1/2000".parse().unwrap();
        assert_eq!(decimal_approx(&tiny, 2), "0.00");
        assert_eq!(decimal_approx(&tiny, 4), "-0.0005");
    }
}
