//! Invertible affine transformations of the coordinate space, the
//! predicates that carve out the kinematic families (trivial maps,
//! spatial rotations, kappa-isometries), and exact constructors for the
//! standard family representatives.

mod rotation;

pub use rotation::{rot180_about, srot_from_frame, srot_line_to_line, srot_plane_to_tx};

use crate::efield::{FieldElem, FieldError};
use crate::geom::{Line, Vec3, Vec4};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XformError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("transformation keeps the time axis at rest")]
    NotMoving,
    #[error("unknown constructor '{0}'")]
    UnknownConstructor(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A 4x4 matrix over the field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat4 {
    m: [[FieldElem; 4]; 4],
}

fn zero_row() -> [FieldElem; 4] {
    [
        FieldElem::zero(),
        FieldElem::zero(),
        FieldElem::zero(),
        FieldElem::zero(),
    ]
}

impl Mat4 {
    pub fn from_rows(m: [[FieldElem; 4]; 4]) -> Self {
        Mat4 { m }
    }

    pub fn zero() -> Self {
        Mat4 { m: [zero_row(), zero_row(), zero_row(), zero_row()] }
    }

    pub fn identity() -> Self {
        Mat4::diag(
            FieldElem::one(),
            FieldElem::one(),
            FieldElem::one(),
            FieldElem::one(),
        )
    }

    pub fn diag(d0: FieldElem, d1: FieldElem, d2: FieldElem, d3: FieldElem) -> Self {
        let mut m = Mat4::zero();
        m.m[0][0] = d0;
        m.m[1][1] = d1;
        m.m[2][2] = d2;
        m.m[3][3] = d3;
        m
    }

    pub fn entry(&self, row: usize, col: usize) -> &FieldElem {
        &self.m[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: FieldElem) {
        self.m[row][col] = v;
    }

    pub fn rows(&self) -> &[[FieldElem; 4]; 4] {
        &self.m
    }

    /// Image of the j-th basis vector.
    pub fn col(&self, j: usize) -> Vec4 {
        Vec4::new(
            self.m[0][j].clone(),
            self.m[1][j].clone(),
            self.m[2][j].clone(),
            self.m[3][j].clone(),
        )
    }

    pub fn apply(&self, v: &Vec4) -> Vec4 {
        let c = v.components();
        let row = |i: usize| -> FieldElem {
            let mut acc = FieldElem::zero();
            for (j, vj) in c.iter().enumerate() {
                acc = &acc + &(&self.m[i][j] * *vj);
            }
            acc
        };
        Vec4::new(row(0), row(1), row(2), row(3))
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = FieldElem::zero();
                for (k, rhs_row) in rhs.m.iter().enumerate() {
                    acc = &acc + &(&self.m[i][k] * &rhs_row[j]);
                }
                out.m[i][j] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].clone();
            }
        }
        out
    }

    pub fn det(&self) -> FieldElem {
        let mut rows = self.m.clone();
        let mut det = FieldElem::one();
        for col in 0..4 {
            let Some(pivot) = (col..4).find(|&i| !rows[i][col].is_zero()) else {
                return FieldElem::zero();
            };
            if pivot != col {
                rows.swap(col, pivot);
                det = -det;
            }
            det = &det * &rows[col][col];
            for i in col + 1..4 {
                if rows[i][col].is_zero() {
                    continue;
                }
                let factor = &rows[i][col] / &rows[col][col];
                for c in col..4 {
                    rows[i][c] = &rows[i][c] - &(&factor * &rows[col][c]);
                }
            }
        }
        det
    }

    pub fn try_inverse(&self) -> Option<Mat4> {
        let mut a = self.m.clone();
        let mut b = Mat4::identity().m;
        for col in 0..4 {
            let pivot = (col..4).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].checked_inv().ok()?;
            for c in 0..4 {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for i in 0..4 {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                for c in 0..4 {
                    a[i][c] = &a[i][c] - &(&factor * &a[col][c]);
                    b[i][c] = &b[i][c] - &(&factor * &b[col][c]);
                }
            }
        }
        Some(Mat4 { m: b })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat4::identity()
    }

    /// Determinant of the spatial 3x3 block (rows and columns 1..3).
    pub fn spatial_det(&self) -> FieldElem {
        let m = &self.m;
        let term = |a: usize, b: usize, c: usize| -> FieldElem {
            &m[1][a] * &(&(&m[2][b] * &m[3][c]) - &(&m[2][c] * &m[3][b]))
        };
        &(&term(1, 2, 3) - &term(2, 1, 3)) + &term(3, 1, 2)
    }

    /// Whether the spatial 3x3 block satisfies B^T B = I exactly.
    pub fn spatial_block_orthonormal(&self) -> bool {
        for i in 1..4 {
            for j in i..4 {
                let mut acc = FieldElem::zero();
                for row in &self.m[1..4] {
                    acc = &acc + &(&row[i] * &row[j]);
                }
                let expect = if i == j { FieldElem::one() } else { FieldElem::zero() };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.m {
            writeln!(f, "  [{}, {}, {}, {}]", row[0], row[1], row[2], row[3])?;
        }
        write!(f, "]")
    }
}

impl serde::Serialize for Mat4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.m.iter().map(|row| {
            row.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        }))
    }
}

impl<'de> serde::Deserialize<'de> for Mat4 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let m = <[[FieldElem; 4]; 4]>::deserialize(deserializer)?;
        Ok(Mat4 { m })
    }
}

/// An invertible affine transformation `p -> L p + translation`.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    linear: Mat4,
    translation: Vec4,
}

impl AffineMap {
    /// Fails with [`XformError::SingularMatrix`] when the linear part is
    /// not invertible.
    pub fn new(linear: Mat4, translation: Vec4) -> Result<Self, XformError> {
        if linear.det().is_zero() {
            return Err(XformError::SingularMatrix);
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity() -> Self {
        AffineMap { linear: Mat4::identity(), translation: Vec4::origin() }
    }

    pub fn linear(&self) -> &Mat4 {
        &self.linear
    }

    pub fn translation(&self) -> &Vec4 {
        &self.translation
    }

    pub fn apply(&self, p: &Vec4) -> Vec4 {
        &self.linear.apply(p) + &self.translation
    }

    /// Image of a line; always a line since the map is an affine bijection.
    pub fn apply_line(&self, l: &Line) -> Line {
        Line::new(self.apply(l.base()), self.linear.apply(l.dir()))
            .expect("invertible maps preserve nonzero directions")
    }

    /// `self` after `inner`: the map p -> self(inner(p)).
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear.mul(&inner.linear),
            translation: &self.linear.apply(&inner.translation) + &self.translation,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self
            .linear
            .try_inverse()
            .expect("construction guarantees invertibility");
        let translation = -&inv.apply(&self.translation);
        AffineMap { linear: inv, translation }
    }

    /// The same map with its translation removed.
    pub fn linear_part(&self) -> AffineMap {
        AffineMap { linear: self.linear.clone(), translation: Vec4::origin() }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AffineMap{{linear: {:?}, translation: {:?}}}",
            self.linear, self.translation
        )
    }
}

impl serde::Serialize for AffineMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("AffineMap", 2)?;
        s.serialize_field("linear", &self.linear)?;
        s.serialize_field("translation", &self.translation)?;
        s.end()
    }
}

impl<'de> serde::Deserialize<'de> for AffineMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            linear: Mat4,
            translation: Vec4,
        }
        let raw = Raw::deserialize(deserializer)?;
        AffineMap::new(raw.linear, raw.translation).map_err(serde::de::Error::custom)
    }
}

/// Whether the linear part fixes the time axis setwise, maps spatial basis
/// directions into the present, and acts orthonormally on space, with no
/// translation. This is the stabilizer checked on linear maps alone.
pub fn is_linear_trivial(f: &AffineMap) -> bool {
    f.translation.is_zero() && linear_block_trivial(f.linear())
}

/// Triviality up to translation: the composition of a linear trivial map
/// and an arbitrary translation.
pub fn is_trivial(f: &AffineMap) -> bool {
    linear_block_trivial(f.linear())
}

fn linear_block_trivial(l: &Mat4) -> bool {
    let time_col_fixed = {
        let c = l.col(0);
        c.spatial().is_zero() && c.t.abs() == FieldElem::one()
    };
    let spatial_cols_horizontal =
        l.entry(0, 1).is_zero() && l.entry(0, 2).is_zero() && l.entry(0, 3).is_zero();
    let primary = time_col_fixed && spatial_cols_horizontal && l.spatial_block_orthonormal();

    // Redundant route: full 4x4 orthogonality plus the time axis fixed
    // setwise characterizes the same stabilizer.
    let whole_orthogonal = l.transpose().mul(l).is_identity();
    let alternate = whole_orthogonal && l.col(0).spatial().is_zero();
    debug_assert_eq!(primary, alternate);
    primary
}

/// A rotation of space leaving time untouched: trivial, linear, fixing the
/// forward time direction, and orientation-preserving on space.
pub fn is_spatial_rotation(f: &AffineMap) -> bool {
    is_linear_trivial(f)
        && f.linear().col(0) == Vec4::t_hat()
        && f.linear().spatial_det().sign() == Ordering::Greater
}

/// Exact membership test for the kappa-isometry group.
///
/// For nonzero kappa the linear part must preserve the kappa-form, checked
/// as an exact matrix identity; for kappa = 0 preservation of time
/// differences and of spatial distance at equal times is structural:
/// time row (+-1, 0, 0, 0) and an orthonormal spatial block. Translations
/// are always allowed.
pub fn is_kappa_isometry(f: &AffineMap, kappa: &FieldElem) -> bool {
    let l = f.linear();
    if kappa.is_zero() {
        let time_row_unit = l.entry(0, 0).abs() == FieldElem::one()
            && l.entry(0, 1).is_zero()
            && l.entry(0, 2).is_zero()
            && l.entry(0, 3).is_zero();
        return time_row_unit && l.spatial_block_orthonormal();
    }
    let eta = Mat4::diag(FieldElem::one(), -kappa, -kappa, -kappa);
    let preserved = l.transpose().mul(&eta).mul(l) == eta;

    // Polarization cross-check: preserving the squared kappa-length of the
    // basis vectors and of their pairwise sums pins the whole form.
    let basis = [Vec4::t_hat(), Vec4::x_hat(), Vec4::y_hat(), Vec4::z_hat()];
    let mut probes: Vec<Vec4> = basis.to_vec();
    for i in 0..4 {
        for j in i + 1..4 {
            probes.push(&basis[i] + &basis[j]);
        }
    }
    let pointwise = probes
        .iter()
        .all(|p| l.apply(p).knorm2(kappa) == p.knorm2(kappa));
    debug_assert_eq!(preserved, pointwise);
    preserved
}

/// Extracts kappa from where the map takes one tick of the rest clock:
/// with d = f(that) - f(origin), kappa = (d_t^2 - 1) / |d_s|^2. Defined
/// only for maps that set the time axis in motion.
pub fn kappa_of(f: &AffineMap) -> Result<FieldElem, XformError> {
    let d = f.linear().col(0);
    let denom = d.spatial().norm2();
    if denom.is_zero() {
        return Err(XformError::NotMoving);
    }
    Ok(&(&d.t.square() - &FieldElem::one()) / &denom)
}

/// Translation by an arbitrary vector.
pub fn translation(v: &Vec4) -> AffineMap {
    AffineMap { linear: Mat4::identity(), translation: v.clone() }
}

/// Galilean boost: shears space along time, (t, s) -> (t, s + t*v).
pub fn gal_boost(v: &Vec3) -> AffineMap {
    let mut l = Mat4::identity();
    l.set(1, 0, v.x.clone());
    l.set(2, 0, v.y.clone());
    l.set(3, 0, v.z.clone());
    AffineMap { linear: l, translation: Vec4::origin() }
}

/// Lorentz boost along x with light speed `c` and velocity `v`, requiring
/// `c > 0` and `|v| < c`. One tick of the rest clock lands on
/// (gamma, gamma*v, 0, 0) with gamma = 1/sqrt(1 - v^2/c^2).
pub fn lorentz_boost(c: &FieldElem, v: &FieldElem) -> Result<AffineMap, XformError> {
    if !c.is_positive() {
        return Err(XformError::ParameterOutOfRange("c must be positive".into()));
    }
    if v.abs().compare(c) != Ordering::Less {
        return Err(XformError::ParameterOutOfRange("|v| must be below c".into()));
    }
    let c2 = c.square();
    let ratio = &v.square() / &c2;
    let gamma = (FieldElem::one() - ratio).sqrt_nonneg()?.checked_inv()?;
    let mut l = Mat4::identity();
    l.set(0, 0, gamma.clone());
    l.set(0, 1, &(&gamma * v) / &c2);
    l.set(1, 0, &gamma * v);
    l.set(1, 1, gamma);
    Ok(AffineMap { linear: l, translation: Vec4::origin() })
}

/// Rotation in the t-x plane with rational point (cos, sin) given by the
/// half-angle parameter u: cos = (1-u^2)/(1+u^2), sin = 2u/(1+u^2).
pub fn eucl_rot_tx(u: &FieldElem) -> AffineMap {
    let u2 = u.square();
    let denom = &FieldElem::one() + &u2;
    let cos = &(&FieldElem::one() - &u2) / &denom;
    let sin = &u.double() / &denom;
    let mut l = Mat4::identity();
    l.set(0, 0, cos.clone());
    l.set(0, 1, -&sin);
    l.set(1, 0, sin);
    l.set(1, 1, cos);
    AffineMap { linear: l, translation: Vec4::origin() }
}

/// Uniform rescaling of space with time fixed; `lambda` must be positive.
pub fn dilation(lambda: &FieldElem) -> Result<AffineMap, XformError> {
    if !lambda.is_positive() {
        return Err(XformError::ParameterOutOfRange("lambda must be positive".into()));
    }
    Ok(AffineMap {
        linear: Mat4::diag(
            FieldElem::one(),
            lambda.clone(),
            lambda.clone(),
            lambda.clone(),
        ),
        translation: Vec4::origin(),
    })
}

/// A transformation given either explicitly (matrix plus translation) or
/// as a named constructor with arguments.
#[derive(serde::Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Make {
        make: String,
        #[serde(default)]
        args: MakeArgs,
    },
    Explicit(AffineMap),
}

#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MakeArgs {
    pub c: Option<FieldElem>,
    pub v: Option<FieldElem>,
    pub u: Option<FieldElem>,
    pub vec: Option<Vec<FieldElem>>,
    pub lambda: Option<FieldElem>,
}

impl MapSpec {
    pub fn resolve(self) -> Result<AffineMap, XformError> {
        match self {
            MapSpec::Explicit(map) => Ok(map),
            MapSpec::Make { make, args } => build_named(&make, args),
        }
    }
}

fn need<T>(v: Option<T>, what: &str, name: &str) -> Result<T, XformError> {
    v.ok_or_else(|| {
        XformError::ParameterOutOfRange(format!("{name} requires --{what}"))
    })
}

fn vec_arity(vec: Vec<FieldElem>, n: usize, name: &str) -> Result<Vec<FieldElem>, XformError> {
    if vec.len() != n {
        return Err(XformError::ParameterOutOfRange(format!(
            "{name} takes {n} components, got {}",
            vec.len()
        )));
    }
    Ok(vec)
}

/// Builds one of the named constructors from keyword arguments.
pub fn build_named(name: &str, args: MakeArgs) -> Result<AffineMap, XformError> {
    match name {
        "translation" => {
            let v = vec_arity(need(args.vec, "vec", name)?, 4, name)?;
            let [t, x, y, z]: [FieldElem; 4] = v.try_into().unwrap();
            Ok(translation(&Vec4::new(t, x, y, z)))
        }
        "gal_boost" => {
            let v = vec_arity(need(args.vec, "vec", name)?, 3, name)?;
            let [x, y, z]: [FieldElem; 3] = v.try_into().unwrap();
            Ok(gal_boost(&Vec3::new(x, y, z)))
        }
        "lorentz_boost" => {
            let c = need(args.c, "c", name)?;
            let v = need(args.v, "v", name)?;
            lorentz_boost(&c, &v)
        }
        "eucl_rot_tx" => Ok(eucl_rot_tx(&need(args.u, "u", name)?)),
        "dilation" => dilation(&need(args.lambda, "lambda", name)?),
        "rot180" => {
            let v = vec_arity(need(args.vec, "vec", name)?, 3, name)?;
            let [x, y, z]: [FieldElem; 3] = v.try_into().unwrap();
            rot180_about(&Vec3::new(x, y, z))
        }
        other => Err(XformError::UnknownConstructor(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn v4(t: &str, x: &str, y: &str, z: &str) -> Vec4 {
        Vec4::new(num(t), num(x), num(y), num(z))
    }

    #[test]
    fn compose_inverse_apply_agree() {
        let f = lorentz_boost(&num("1"), &num("3/5")).unwrap();
        let g = translation(&v4("1", "2", "3", "4"));
        let h = f.compose(&g);
        let p = v4("2", "-1", "1/2", "0");
        assert_eq!(h.apply(&p), f.apply(&g.apply(&p)));
        assert_eq!(h.compose(&h.inverse()), AffineMap::identity());
        assert_eq!(h.inverse().compose(&h), AffineMap::identity());
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let mut m = Mat4::identity();
        m.set(2, 2, FieldElem::zero());
        assert!(matches!(
            AffineMap::new(m, Vec4::origin()),
            Err(XformError::SingularMatrix)
        ));
    }

    #[test]
    fn boost_moves_one_tick_as_expected() {
        let f = lorentz_boost(&num("1"), &num("3/5")).unwrap();
        assert_eq!(f.apply(&Vec4::t_hat()), v4("5/4", "3/4", "0", "0"));
        assert!(is_kappa_isometry(&f, &num("1")));
        assert!(!is_kappa_isometry(&f, &num("-1")));
        assert!(!is_kappa_isometry(&f, &num("0")));
        assert_eq!(kappa_of(&f).unwrap(), num("1"));
        // Irrational gamma keeps everything exact.
        let slow = lorentz_boost(&num("1"), &num("1/2")).unwrap();
        assert!(is_kappa_isometry(&slow, &num("1")));
        assert_eq!(kappa_of(&slow).unwrap(), num("1"));
        let c3 = lorentz_boost(&num("3"), &num("1")).unwrap();
        assert!(is_kappa_isometry(&c3, &num("1/9")));
        assert_eq!(kappa_of(&c3).unwrap(), num("1/9"));
    }

    #[test]
    fn boost_parameters_are_validated() {
        assert!(matches!(
            lorentz_boost(&num("0"), &num("0")),
            Err(XformError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            lorentz_boost(&num("1"), &num("1")),
            Err(XformError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            lorentz_boost(&num("1"), &num("-7/5")),
            Err(XformError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            dilation(&num("0")),
            Err(XformError::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn euclidean_rotation_mixes_time_into_space() {
        let f = eucl_rot_tx(&num("1/3"));
        assert_eq!(f.apply(&Vec4::t_hat()), v4("4/5", "3/5", "0", "0"));
        assert!(is_kappa_isometry(&f, &num("-1")));
        assert_eq!(kappa_of(&f).unwrap(), num("-1"));
        assert!(!is_trivial(&f));
    }

    #[test]
    fn galilean_boost_shears() {
        let f = gal_boost(&Vec3::new(num("3"), num("0"), num("0")));
        assert_eq!(f.apply(&Vec4::t_hat()), v4("1", "3", "0", "0"));
        assert_eq!(f.apply(&v4("0", "1", "0", "0")), v4("0", "1", "0", "0"));
        assert!(is_kappa_isometry(&f, &num("0")));
        assert!(!is_kappa_isometry(&f, &num("1")));
        assert_eq!(kappa_of(&f).unwrap(), num("0"));
    }

    #[test]
    fn trivial_predicates_recognize_the_stabilizer() {
        assert!(is_linear_trivial(&AffineMap::identity()));
        let shift = translation(&v4("1", "0", "2", "0"));
        assert!(is_trivial(&shift) && !is_linear_trivial(&shift));
        // Time reflection with a spatial permutation is trivial.
        let mut m = Mat4::zero();
        m.set(0, 0, num("-1"));
        m.set(1, 2, num("1"));
        m.set(2, 1, num("1"));
        m.set(3, 3, num("-1"));
        let f = AffineMap::new(m, Vec4::origin()).unwrap();
        assert!(is_linear_trivial(&f));
        assert!(!is_spatial_rotation(&f));
        let d = dilation(&num("2")).unwrap();
        assert!(!is_trivial(&d));
        assert!(matches!(kappa_of(&d), Err(XformError::NotMoving)));
        let b = lorentz_boost(&num("1"), &num("3/5")).unwrap();
        assert!(!is_trivial(&b));
    }

    #[test]
    fn trivial_maps_are_isometries_for_every_kappa() {
        let mut m = Mat4::zero();
        m.set(0, 0, num("1"));
        m.set(1, 1, num("3/5"));
        m.set(1, 2, num("-4/5"));
        m.set(2, 1, num("4/5"));
        m.set(2, 2, num("3/5"));
        m.set(3, 3, num("1"));
        let rot = AffineMap::new(m, v4("2", "1", "0", "-1")).unwrap();
        assert!(is_trivial(&rot));
        for kappa in ["-1", "0", "1", "2", "-7/3"] {
            assert!(is_kappa_isometry(&rot, &num(kappa)));
        }
    }

    #[test]
    fn spatial_rotation_requires_positive_orientation_and_forward_time() {
        let mut m = Mat4::identity();
        m.set(1, 1, num("0"));
        m.set(1, 2, num("-1"));
        m.set(2, 1, num("1"));
        m.set(2, 2, num("0"));
        let quarter = AffineMap::new(m, Vec4::origin()).unwrap();
        assert!(is_spatial_rotation(&quarter));
        let mut refl = Mat4::identity();
        refl.set(1, 1, num("-1"));
        let mirror = AffineMap::new(refl, Vec4::origin()).unwrap();
        assert!(is_linear_trivial(&mirror) && !is_spatial_rotation(&mirror));
        let mut back = Mat4::identity();
        back.set(0, 0, num("-1"));
        let reversed = AffineMap::new(back, Vec4::origin()).unwrap();
        assert!(is_linear_trivial(&reversed) && !is_spatial_rotation(&reversed));
    }

    #[test]
    fn rescaling_conjugation_rescales_kappa() {
        let f = lorentz_boost(&num("1"), &num("3/5")).unwrap();
        for lam in ["2", "3", "1/2"] {
            let d = dilation(&num(lam)).unwrap();
            let conj = d.compose(&f).compose(&d.inverse());
            let expected = num("1") / num(lam).square();
            assert_eq!(kappa_of(&conj).unwrap(), expected);
            assert!(is_kappa_isometry(&conj, &expected));
        }
    }

    #[test]
    fn map_spec_json_forms() {
        let explicit = r#"{
            "linear": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
            "translation": ["1","2","0","0"]
        }"#;
        let spec: MapSpec = serde_json::from_str(explicit).unwrap();
        let map = spec.resolve().unwrap();
        assert_eq!(map, translation(&v4("1", "2", "0", "0")));

        let made = r#"{"make": "lorentz_boost", "args": {"c": "1", "v": "3/5"}}"#;
        let spec: MapSpec = serde_json::from_str(made).unwrap();
        let map = spec.resolve().unwrap();
        assert_eq!(map, lorentz_boost(&num("1"), &num("3/5")).unwrap());

        let singular = r#"{
            "linear": [["1","0","0","0"],["0","0","0","0"],["0","0","1","0"],["0","0","0","1"]],
            "translation": ["0","0","0","0"]
        }"#;
        assert!(serde_json::from_str::<MapSpec>(singular).is_err());

        let unknown = r#"{"make": "mystery", "args": {}}"#;
        let spec: MapSpec = serde_json::from_str(unknown).unwrap();
        assert!(matches!(spec.resolve(), Err(XformError::UnknownConstructor(_))));
    }
}
