//! Exact arithmetic in a computable Euclidean field: the closure of the
//! rationals under real square roots of nonnegative elements.
//!
//! An element is either a rational or `a + b*sqrt(r)` where `a`, `b`, `r`
//! are themselves elements and `r > 0`. Nesting levels are merged by a
//! structural order on radicands, so two elements built from the same
//! radicals combine coefficient-wise. Equality and order are decided by a
//! recursive sign computation, never by approximation.

mod parse;
mod quadratic;

pub use quadratic::{ivt_sqrt_quadratic, parse_quadratic, Quadratic};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// Default cap on radical nesting depth.
pub const DEFAULT_TOWER_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative element")]
    NegativeRadicand,
    #[error("radical nesting exceeds the depth cap of {cap}")]
    TowerOverflow { cap: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

#[derive(Clone)]
pub(crate) enum Repr {
    Rat(BigRational),
    Ext(Arc<Ext>),
}

/// `a + b*sqrt(r)` with `b != 0` and `r > 0`.
pub(crate) struct Ext {
    a: Repr,
    b: Repr,
    r: Repr,
}

fn rat(n: i64) -> Repr {
    Repr::Rat(BigRational::from_integer(BigInt::from(n)))
}

/// Structural order on representations. Used only to decide which radicand
/// becomes the outer level when two towers merge; any total order works,
/// a fixed one keeps results deterministic.
fn shape_cmp(x: &Repr, y: &Repr) -> Ordering {
    match (x, y) {
        (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
        (Repr::Rat(_), Repr::Ext(_)) => Ordering::Less,
        (Repr::Ext(_), Repr::Rat(_)) => Ordering::Greater,
        (Repr::Ext(e), Repr::Ext(f)) => shape_cmp(&e.r, &f.r)
            .then_with(|| shape_cmp(&e.a, &f.a))
            .then_with(|| shape_cmp(&e.b, &f.b)),
    }
}

fn sign(x: &Repr) -> Ordering {
    match x {
        Repr::Rat(q) => q.numer().sign().cmp(&num_bigint::Sign::NoSign),
        Repr::Ext(e) => match (sign(&e.a), sign(&e.b)) {
            (Ordering::Equal, sb) => sb,
            (sa, Ordering::Equal) => sa,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // a and b*sqrt(r) pull in opposite directions: the winner is a
            // when a^2 > b^2*r and b*sqrt(r) when a^2 < b^2*r, one level down.
            (sa @ Ordering::Greater, _) | (sa @ Ordering::Less, _) => {
                let lhs = mul(&e.a, &e.a);
                let rhs = mul(&mul(&e.b, &e.b), &e.r);
                match sign(&sub(&lhs, &rhs)) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                }
            }
        },
    }
}

/// Builds `a + b*sqrt(r)`, collapsing to `a` when `b = 0`.
fn mk_ext(a: Repr, b: Repr, r: &Repr) -> Repr {
    if sign(&b) == Ordering::Equal {
        a
    } else {
        Repr::Ext(Arc::new(Ext { a, b, r: r.clone() }))
    }
}

fn add(x: &Repr, y: &Repr) -> Repr {
    match (x, y) {
        (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
        (Repr::Ext(e), Repr::Rat(_)) => mk_ext(add(&e.a, y), e.b.clone(), &e.r),
        (Repr::Rat(_), Repr::Ext(e)) => mk_ext(add(x, &e.a), e.b.clone(), &e.r),
        (Repr::Ext(e), Repr::Ext(f)) => match shape_cmp(&e.r, &f.r) {
            Ordering::Equal => mk_ext(add(&e.a, &f.a), add(&e.b, &f.b), &e.r),
            Ordering::Less => mk_ext(add(x, &f.a), f.b.clone(), &f.r),
            Ordering::Greater => mk_ext(add(&e.a, y), e.b.clone(), &e.r),
        },
    }
}

fn neg(x: &Repr) -> Repr {
    match x {
        Repr::Rat(q) => Repr::Rat(-q),
        Repr::Ext(e) => Repr::Ext(Arc::new(Ext {
            a: neg(&e.a),
            b: neg(&e.b),
            r: e.r.clone(),
        })),
    }
}

fn sub(x: &Repr, y: &Repr) -> Repr {
    add(x, &neg(y))
}

fn mul(x: &Repr, y: &Repr) -> Repr {
    match (x, y) {
        (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
        (Repr::Ext(e), Repr::Rat(q)) | (Repr::Rat(q), Repr::Ext(e)) => {
            if q.is_zero() {
                rat(0)
            } else {
                mk_ext(mul(&e.a, &Repr::Rat(q.clone())), mul(&e.b, &Repr::Rat(q.clone())), &e.r)
            }
        }
        (Repr::Ext(e), Repr::Ext(f)) => match shape_cmp(&e.r, &f.r) {
            Ordering::Equal => {
                let a = add(&mul(&e.a, &f.a), &mul(&mul(&e.b, &f.b), &e.r));
                let b = add(&mul(&e.a, &f.b), &mul(&e.b, &f.a));
                mk_ext(a, b, &e.r)
            }
            Ordering::Less => mk_ext(mul(x, &f.a), mul(x, &f.b), &f.r),
            Ordering::Greater => mk_ext(mul(&e.a, y), mul(&e.b, y), &e.r),
        },
    }
}

fn inv(x: &Repr) -> Result<Repr, FieldError> {
    match x {
        Repr::Rat(q) => {
            if q.is_zero() {
                Err(FieldError::DivisionByZero)
            } else {
                Ok(Repr::Rat(q.recip()))
            }
        }
        Repr::Ext(e) => {
            let n = sub(&mul(&e.a, &e.a), &mul(&mul(&e.b, &e.b), &e.r));
            if sign(&n) != Ordering::Equal {
                let ninv = inv(&n)?;
                Ok(mk_ext(mul(&e.a, &ninv), neg(&mul(&e.b, &ninv)), &e.r))
            } else if sign(x) == Ordering::Equal {
                Err(FieldError::DivisionByZero)
            } else {
                // Conjugate vanishes while x does not: sqrt(r) equals a/b
                // here, so x = 2a and we invert one level down.
                inv(&add(&e.a, &e.a))
            }
        }
    }
}

fn depth(x: &Repr) -> usize {
    match x {
        Repr::Rat(_) => 0,
        Repr::Ext(e) => depth(&e.a).max(depth(&e.b)).max(depth(&e.r) + 1),
    }
}

/// Exact nonnegative square root within the radicals already present,
/// or `None` when representing it needs a new radical.
fn try_sqrt(x: &Repr) -> Option<Repr> {
    match x {
        Repr::Rat(q) => {
            if q.is_negative() {
                return None;
            }
            let (sn, sd) = (q.numer().sqrt(), q.denom().sqrt());
            if &(&sn * &sn) == q.numer() && &(&sd * &sd) == q.denom() {
                Some(Repr::Rat(BigRational::new(sn, sd)))
            } else {
                None
            }
        }
        Repr::Ext(e) => {
            let d = sub(&mul(&e.a, &e.a), &mul(&mul(&e.b, &e.b), &e.r));
            let n = try_sqrt(&d)?;
            let two = rat(2);
            let a_plus_n = add(&e.a, &n);
            let half = mul(&a_plus_n, &Repr::Rat(BigRational::new(BigInt::one(), BigInt::from(2))));
            if let Some(u) = try_sqrt(&half) {
                if sign(&u) != Ordering::Equal {
                    let bb = mul(&e.b, &inv(&mul(&two, &u)).ok()?);
                    return Some(abs_repr(mk_ext(u, bb, &e.r)));
                }
            }
            let half_r = mul(&a_plus_n, &inv(&mul(&two, &e.r)).ok()?);
            if let Some(v) = try_sqrt(&half_r) {
                if sign(&v) != Ordering::Equal {
                    let aa = mul(&e.b, &inv(&mul(&two, &v)).ok()?);
                    return Some(abs_repr(mk_ext(aa, v, &e.r)));
                }
            }
            None
        }
    }
}

fn abs_repr(x: Repr) -> Repr {
    if sign(&x) == Ordering::Less {
        neg(&x)
    } else {
        x
    }
}

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Splits a positive integer as s^2 * m with m free of small square factors.
fn extract_square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut m = n.clone();
    for p in SMALL_PRIMES {
        let p2 = BigInt::from(p) * BigInt::from(p);
        loop {
            let (q, rem) = num_integer::Integer::div_rem(&m, &p2);
            if rem.is_zero() {
                m = q;
                s *= BigInt::from(p);
            } else {
                break;
            }
        }
    }
    let root = m.sqrt();
    if &root * &root == m {
        s *= root;
        m = BigInt::one();
    }
    (s, m)
}

fn sqrt_nonneg_repr(x: &Repr, cap: usize) -> Result<Repr, FieldError> {
    match sign(x) {
        Ordering::Less => return Err(FieldError::NegativeRadicand),
        Ordering::Equal => return Ok(rat(0)),
        Ordering::Greater => {}
    }
    if let Some(s) = try_sqrt(x) {
        return Ok(s);
    }
    match x {
        Repr::Rat(q) => {
            // sqrt(n/d) = sqrt(n*d)/d; pull square factors out of the
            // radicand so equal values meet in the same radical.
            let nd = q.numer() * q.denom();
            let (s, m) = extract_square_part(&nd);
            let coeff = Repr::Rat(BigRational::new(s, q.denom().clone()));
            if m.is_one() {
                return Ok(coeff);
            }
            if cap < 1 {
                return Err(FieldError::TowerOverflow { cap });
            }
            Ok(mk_ext(rat(0), coeff, &Repr::Rat(BigRational::from_integer(m))))
        }
        Repr::Ext(_) => {
            if depth(x) + 1 > cap {
                return Err(FieldError::TowerOverflow { cap });
            }
            Ok(mk_ext(rat(0), rat(1), x))
        }
    }
}

/// An element of the real Euclidean closure of the rationals.
///
/// Comparison, equality and hashing-free deduplication all go through the
/// exact sign computation; two elements built along different radical
/// paths still compare equal when their values coincide.
#[derive(Clone)]
pub struct FieldElem {
    repr: Repr,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { repr: rat(0) }
    }

    pub fn one() -> Self {
        FieldElem { repr: rat(1) }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem { repr: rat(n) }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem {
            repr: Repr::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
        })
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElem { repr: Repr::Rat(q) }
    }

    /// The rational value when the element carries no radical.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            Repr::Ext(_) => None,
        }
    }

    pub fn sign(&self) -> Ordering {
        sign(&self.repr)
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn compare(&self, other: &FieldElem) -> Ordering {
        sign(&sub(&self.repr, &other.repr))
    }

    pub fn abs(&self) -> FieldElem {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn double(&self) -> FieldElem {
        self + self
    }

    pub fn checked_inv(&self) -> Result<FieldElem, FieldError> {
        Ok(FieldElem { repr: inv(&self.repr)? })
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(FieldElem { repr: mul(&self.repr, &inv(&rhs.repr)?) })
    }

    /// Exact square root of a nonnegative element, at the default nesting cap.
    pub fn sqrt_nonneg(&self) -> Result<FieldElem, FieldError> {
        self.sqrt_nonneg_capped(DEFAULT_TOWER_CAP)
    }

    /// Exact square root with an explicit cap on radical nesting depth.
    pub fn sqrt_nonneg_capped(&self, cap: usize) -> Result<FieldElem, FieldError> {
        Ok(FieldElem { repr: sqrt_nonneg_repr(&self.repr, cap)? })
    }

    /// Nesting depth of radicals: 0 for rationals.
    pub fn tower_depth(&self) -> usize {
        depth(&self.repr)
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Structural identity: same radical tree, same coefficients. Fast
    /// screen before the exact semantic comparison.
    pub fn same_shape(&self, other: &FieldElem) -> bool {
        shape_eq(&self.repr, &other.repr)
    }
}

fn shape_eq(x: &Repr, y: &Repr) -> bool {
    match (x, y) {
        (Repr::Rat(a), Repr::Rat(b)) => a == b,
        (Repr::Ext(e), Repr::Ext(f)) => {
            shape_eq(&e.a, &f.a) && shape_eq(&e.b, &f.b) && shape_eq(&e.r, &f.r)
        }
        _ => false,
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) || self.compare(other) == Ordering::Equal
    }
}

impl Eq for FieldElem {}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                FieldElem { repr: $f(&self.repr, &rhs.repr) }
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

/// Panics on a zero divisor; use [`FieldElem::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        (&self).div(&rhs)
    }
}

impl Div<&FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        (&self).div(rhs)
    }
}

impl Div<FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        self.div(&rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { repr: neg(&self.repr) }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -(&self)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}
