//! Points, lines, planes and hyperplanes of the 4-dimensional coordinate
//! space over the field, with exact incidence tests and slopes.
//!
//! Coordinates are ordered (t, x, y, z); the first is time, the remaining
//! three are space.

use crate::efield::FieldElem;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

/// A spatial 3-vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Vec3 {
    pub x: FieldElem,
    pub y: FieldElem,
    pub z: FieldElem,
}

impl Vec3 {
    pub fn new(x: FieldElem, y: FieldElem, z: FieldElem) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(FieldElem::zero(), FieldElem::zero(), FieldElem::zero())
    }

    pub fn dot(&self, other: &Vec3) -> FieldElem {
        &(&self.x * &other.x) + &(&self.y * &other.y) + (&self.z * &other.z)
    }

    /// Squared Euclidean length.
    pub fn norm2(&self) -> FieldElem {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &FieldElem) -> Vec3 {
        Vec3::new(k * &self.x, k * &self.y, k * &self.z)
    }

    pub fn components(&self) -> [&FieldElem; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl Add<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A point (or direction) of the coordinate space.
#[derive(Clone, PartialEq, Eq)]
pub struct Vec4 {
    pub t: FieldElem,
    pub x: FieldElem,
    pub y: FieldElem,
    pub z: FieldElem,
}

impl Vec4 {
    pub fn new(t: FieldElem, x: FieldElem, y: FieldElem, z: FieldElem) -> Self {
        Vec4 { t, x, y, z }
    }

    pub fn origin() -> Self {
        Vec4::new(
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::zero(),
        )
    }

    /// Unit vector along the time axis.
    pub fn t_hat() -> Self {
        Vec4::new(
            FieldElem::one(),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::zero(),
        )
    }

    pub fn x_hat() -> Self {
        Vec4::new(
            FieldElem::zero(),
            FieldElem::one(),
            FieldElem::zero(),
            FieldElem::zero(),
        )
    }

    pub fn y_hat() -> Self {
        Vec4::new(
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::one(),
            FieldElem::zero(),
        )
    }

    pub fn z_hat() -> Self {
        Vec4::new(
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::one(),
        )
    }

    pub fn from_spatial(t: FieldElem, s: Vec3) -> Self {
        Vec4::new(t, s.x, s.y, s.z)
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Whether the point lies in the present hyperplane (time component 0).
    pub fn is_horizontal(&self) -> bool {
        self.t.is_zero()
    }

    pub fn scale(&self, k: &FieldElem) -> Vec4 {
        Vec4::new(k * &self.t, k * &self.x, k * &self.y, k * &self.z)
    }

    pub fn dot(&self, other: &Vec4) -> FieldElem {
        &(&self.t * &other.t)
            + &(&self.x * &other.x)
            + &(&self.y * &other.y)
            + (&self.z * &other.z)
    }

    /// Squared Euclidean length of all four coordinates.
    pub fn norm2_euclid(&self) -> FieldElem {
        self.dot(self)
    }

    /// Squared kappa-length: t^2 - kappa * (squared spatial length).
    pub fn knorm2(&self, kappa: &FieldElem) -> FieldElem {
        self.t.square() - kappa * &self.spatial().norm2()
    }

    pub fn components(&self) -> [&FieldElem; 4] {
        [&self.t, &self.x, &self.y, &self.z]
    }
}

impl Add<&Vec4> for &Vec4 {
    type Output = Vec4;
    fn add(self, rhs: &Vec4) -> Vec4 {
        Vec4::new(
            &self.t + &rhs.t,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z,
        )
    }
}

impl Sub<&Vec4> for &Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: &Vec4) -> Vec4 {
        Vec4::new(
            &self.t - &rhs.t,
            &self.x - &rhs.x,
            &self.y - &rhs.y,
            &self.z - &rhs.z,
        )
    }
}

impl Neg for &Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::new(-&self.t, -&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Debug for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.t, self.x, self.y, self.z)
    }
}

impl serde::Serialize for Vec4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.components())
    }
}

impl<'de> serde::Deserialize<'de> for Vec4 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [t, x, y, z] = <[FieldElem; 4]>::deserialize(deserializer)?;
        Ok(Vec4::new(t, x, y, z))
    }
}

impl serde::Serialize for Vec3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.components())
    }
}

impl<'de> serde::Deserialize<'de> for Vec3 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x, y, z] = <[FieldElem; 3]>::deserialize(deserializer)?;
        Ok(Vec3::new(x, y, z))
    }
}

/// Row-reduces the given 4-component rows in place; returns the rank.
fn rank(mut rows: Vec<[FieldElem; 4]>) -> usize {
    let mut r = 0;
    for col in 0..4 {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &rows[r][col];
            for c in col..4 {
                rows[i][c] = &rows[i][c] - &(&factor * &rows[r][c]);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn to_row(v: &Vec4) -> [FieldElem; 4] {
    [v.t.clone(), v.x.clone(), v.y.clone(), v.z.clone()]
}

/// Whether `v` lies in the linear span of `dirs`.
pub fn in_span(dirs: &[Vec4], v: &Vec4) -> bool {
    let base: Vec<_> = dirs.iter().map(to_row).collect();
    let mut extended = base.clone();
    extended.push(to_row(v));
    rank(base) == rank(extended)
}

fn independent(dirs: &[Vec4]) -> bool {
    rank(dirs.iter().map(to_row).collect()) == dirs.len()
}

/// A line, stored as a base point and a nonzero direction. Equality is
/// setwise: the same point set compares equal whatever the presentation.
#[derive(Clone)]
pub struct Line {
    base: Vec4,
    dir: Vec4,
}

impl Line {
    pub fn new(base: Vec4, dir: Vec4) -> Result<Self, GeomError> {
        if dir.is_zero() {
            return Err(GeomError::DegenerateInput("line direction must be nonzero".into()));
        }
        Ok(Line { base, dir })
    }

    pub fn through(p: &Vec4, q: &Vec4) -> Result<Self, GeomError> {
        if p == q {
            return Err(GeomError::DegenerateInput(
                "a line needs two distinct points".into(),
            ));
        }
        Line::new(p.clone(), q - p)
    }

    /// The time axis: all points with zero spatial part.
    pub fn time_axis() -> Self {
        Line { base: Vec4::origin(), dir: Vec4::t_hat() }
    }

    pub fn base(&self) -> &Vec4 {
        &self.base
    }

    pub fn dir(&self) -> &Vec4 {
        &self.dir
    }

    pub fn contains(&self, p: &Vec4) -> bool {
        in_span(std::slice::from_ref(&self.dir), &(p - &self.base))
    }

    pub fn parallel_to(&self, other: &Line) -> bool {
        in_span(std::slice::from_ref(&self.dir), &other.dir)
    }

    pub fn intersect(&self, other: &Line) -> LineMeet {
        if self == other {
            return LineMeet::Same;
        }
        // Solve s*d1 - u*d2 = (base2 - base1) over any invertible
        // coordinate pair, then check the remaining coordinates.
        let d1 = to_row(&self.dir);
        let d2 = to_row(&other.dir);
        let delta = to_row(&(&other.base - &self.base));
        for i in 0..4 {
            for j in i + 1..4 {
                let det = &(&d1[i] * &-&d2[j]) - &(&-&d2[i] * &d1[j]);
                if det.is_zero() {
                    continue;
                }
                let s = &(&(&delta[i] * &-&d2[j]) - &(&-&d2[i] * &delta[j])) / &det;
                let u = &(&(&d1[i] * &delta[j]) - &(&delta[i] * &d1[j])) / &det;
                let consistent = (0..4).all(|k| {
                    (&(&s * &d1[k]) - &(&u * &d2[k])).compare(&delta[k]) == Ordering::Equal
                });
                return if consistent {
                    LineMeet::Point(&self.base + &self.dir.scale(&s))
                } else {
                    LineMeet::Empty
                };
            }
        }
        // Parallel directions and distinct lines: no intersection.
        LineMeet::Empty
    }

    /// Slope of the line: spatial displacement per unit time displacement,
    /// infinite for horizontal lines.
    pub fn slope(&self) -> Slope {
        if self.dir.t.is_zero() {
            Slope::Infinite
        } else {
            let spatial = self
                .dir
                .spatial()
                .norm2()
                .sqrt_nonneg()
                .expect("squared norm is nonnegative");
            Slope::Finite(&spatial / &self.dir.t.abs())
        }
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.parallel_to(other) && self.contains(&other.base)
    }
}

impl Eq for Line {}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line{{base: {:?}, dir: {:?}}}", self.base, self.dir)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineMeet {
    Empty,
    Point(Vec4),
    Same,
}

/// Slope of a segment: ratio of spatial to temporal displacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(FieldElem),
    Infinite,
}

impl Slope {
    pub fn is_finite(&self) -> bool {
        matches!(self, Slope::Finite(_))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(v) => write!(f, "{v}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Slope::Finite(v) => v.serialize(serializer),
            Slope::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Slope between two distinct points.
pub fn slope_between(p: &Vec4, q: &Vec4) -> Result<Slope, GeomError> {
    if p == q {
        return Err(GeomError::DegenerateInput(
            "slope needs two distinct points".into(),
        ));
    }
    let dt = &p.t - &q.t;
    if dt.is_zero() {
        return Ok(Slope::Infinite);
    }
    let ds = (&p.spatial() - &q.spatial())
        .norm2()
        .sqrt_nonneg()
        .expect("squared norm is nonnegative");
    Ok(Slope::Finite(&ds / &dt.abs()))
}

/// A plane: base point plus two independent directions; setwise equality.
#[derive(Clone)]
pub struct Plane {
    base: Vec4,
    dirs: [Vec4; 2],
}

impl Plane {
    pub fn new(base: Vec4, dirs: [Vec4; 2]) -> Result<Self, GeomError> {
        if !independent(&dirs) {
            return Err(GeomError::DegenerateInput(
                "plane directions must be linearly independent".into(),
            ));
        }
        Ok(Plane { base, dirs })
    }

    /// The coordinate plane spanned by the time axis and the x axis.
    pub fn tx() -> Self {
        Plane { base: Vec4::origin(), dirs: [Vec4::t_hat(), Vec4::x_hat()] }
    }

    pub fn base(&self) -> &Vec4 {
        &self.base
    }

    pub fn dirs(&self) -> &[Vec4; 2] {
        &self.dirs
    }

    pub fn contains(&self, p: &Vec4) -> bool {
        in_span(&self.dirs, &(p - &self.base))
    }

    pub fn contains_line(&self, l: &Line) -> bool {
        self.contains(l.base()) && in_span(&self.dirs, l.dir())
    }
}

impl PartialEq for Plane {
    fn eq(&self, other: &Self) -> bool {
        self.contains(&other.base)
            && other.dirs.iter().all(|d| in_span(&self.dirs, d))
            && self.dirs.iter().all(|d| in_span(&other.dirs, d))
    }
}

impl Eq for Plane {}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Plane{{base: {:?}, dirs: [{:?}, {:?}]}}",
            self.base, self.dirs[0], self.dirs[1]
        )
    }
}

/// A hyperplane: base point plus three independent directions.
#[derive(Clone)]
pub struct Hyperplane {
    base: Vec4,
    dirs: [Vec4; 3],
}

impl Hyperplane {
    pub fn new(base: Vec4, dirs: [Vec4; 3]) -> Result<Self, GeomError> {
        if !independent(&dirs) {
            return Err(GeomError::DegenerateInput(
                "hyperplane directions must be linearly independent".into(),
            ));
        }
        Ok(Hyperplane { base, dirs })
    }

    /// The present simultaneity: all points with time component zero.
    pub fn present() -> Self {
        Hyperplane {
            base: Vec4::origin(),
            dirs: [Vec4::x_hat(), Vec4::y_hat(), Vec4::z_hat()],
        }
    }

    pub fn base(&self) -> &Vec4 {
        &self.base
    }

    pub fn dirs(&self) -> &[Vec4; 3] {
        &self.dirs
    }

    pub fn contains(&self, p: &Vec4) -> bool {
        in_span(&self.dirs, &(p - &self.base))
    }
}

impl PartialEq for Hyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.contains(&other.base)
            && other.dirs.iter().all(|d| in_span(&self.dirs, d))
            && self.dirs.iter().all(|d| in_span(&other.dirs, d))
    }
}

impl Eq for Hyperplane {}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane{{base: {:?}, dirs: {:?}}}", self.base, self.dirs)
    }
}

mod flat_serde {
    //! Lines, planes and hyperplanes all serialize as a base point plus a
    //! direction list, validated on the way back in.

    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Flat {
        base: Vec4,
        dirs: Vec<Vec4>,
    }

    macro_rules! flat_impl {
        ($ty:ident, $n:literal) => {
            impl Serialize for $ty {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    Flat { base: self.base.clone(), dirs: self.dirs().to_vec() }.serialize(s)
                }
            }

            impl<'de> Deserialize<'de> for $ty {
                fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                    let flat = Flat::deserialize(d)?;
                    let dirs: [Vec4; $n] = flat
                        .dirs
                        .try_into()
                        .map_err(|_| D::Error::custom(concat!(stringify!($ty), ": wrong direction count")))?;
                    $ty::from_parts(flat.base, dirs).map_err(D::Error::custom)
                }
            }
        };
    }

    impl Line {
        fn dirs(&self) -> Vec<Vec4> {
            vec![self.dir.clone()]
        }
        fn from_parts(base: Vec4, dirs: [Vec4; 1]) -> Result<Self, GeomError> {
            let [dir] = dirs;
            Line::new(base, dir)
        }
    }

    impl Plane {
        fn from_parts(base: Vec4, dirs: [Vec4; 2]) -> Result<Self, GeomError> {
            Plane::new(base, dirs)
        }
    }

    impl Hyperplane {
        fn from_parts(base: Vec4, dirs: [Vec4; 3]) -> Result<Self, GeomError> {
            Hyperplane::new(base, dirs)
        }
    }

    flat_impl!(Line, 1);
    flat_impl!(Plane, 2);
    flat_impl!(Hyperplane, 3);
}
