//! Constructions of spatial rotations with prescribed behaviour: mapping
//! one orthogonal spatial pair onto another, carrying a line through the
//! origin onto a same-slope line, flattening a plane containing the time
//! axis onto the t-x coordinate plane, and half-turns about an axis.

use super::{is_spatial_rotation, AffineMap, Mat4, XformError};
use crate::efield::FieldElem;
use crate::geom::{Line, Plane, Slope, Vec3, Vec4};
use std::cmp::Ordering;

fn pre(msg: impl Into<String>) -> XformError {
    XformError::PreconditionViolation(msg.into())
}

fn normalized(v: &Vec3) -> Result<Vec3, XformError> {
    let len = v.norm2().sqrt_nonneg()?;
    Ok(v.scale(&len.checked_inv().map_err(XformError::Field)?))
}

/// Extends pairwise-orthogonal nonzero seeds to an orthonormal spatial
/// basis, completing with coordinate directions under Gram-Schmidt.
fn orthonormal_frame(seeds: &[Vec3]) -> Result<Vec<Vec3>, XformError> {
    let mut frame = Vec::with_capacity(3);
    for s in seeds {
        frame.push(normalized(s)?);
    }
    let candidates = [
        Vec3::new(FieldElem::one(), FieldElem::zero(), FieldElem::zero()),
        Vec3::new(FieldElem::zero(), FieldElem::one(), FieldElem::zero()),
        Vec3::new(FieldElem::zero(), FieldElem::zero(), FieldElem::one()),
    ];
    for cand in candidates {
        if frame.len() == 3 {
            break;
        }
        let mut w = cand;
        for u in &frame {
            w = &w - &u.scale(&w.dot(u));
        }
        if !w.is_zero() {
            frame.push(normalized(&w)?);
        }
    }
    debug_assert_eq!(frame.len(), 3);
    Ok(frame)
}

/// R = F2 * F1^T on space, identity on time: sends frame1[k] to frame2[k].
fn rotation_between(frame1: &[Vec3], frame2: &[Vec3]) -> Mat4 {
    let mut l = Mat4::identity();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = FieldElem::zero();
            for k in 0..3 {
                acc = &acc + &(frame2[k].components()[i] * frame1[k].components()[j]);
            }
            l.set(i + 1, j + 1, acc);
        }
    }
    l
}

/// The spatial rotation determined by two pinned images: horizontal `p1`
/// goes to `p2` and horizontal `q1` to `q2`, where `p1, q1` are orthogonal
/// and norms match pairwise. Zero pins are skipped; the remaining freedom
/// is filled with completed basis vectors, the last of which is negated
/// when needed to land in the orientation-preserving component.
pub fn srot_from_frame(
    p1: &Vec4,
    q1: &Vec4,
    p2: &Vec4,
    q2: &Vec4,
) -> Result<AffineMap, XformError> {
    for (v, name) in [(p1, "p1"), (q1, "q1"), (p2, "p2"), (q2, "q2")] {
        if !v.is_horizontal() {
            return Err(pre(format!("{name} must be horizontal (time component 0)")));
        }
    }
    let (p1s, q1s, p2s, q2s) = (p1.spatial(), q1.spatial(), p2.spatial(), q2.spatial());
    if !p1s.dot(&q1s).is_zero() {
        return Err(pre("p1 and q1 must be orthogonal"));
    }
    if !p2s.dot(&q2s).is_zero() {
        return Err(pre("p2 and q2 must be orthogonal"));
    }
    if p1s.norm2() != p2s.norm2() {
        return Err(pre("p1 and p2 must have the same squared norm"));
    }
    if q1s.norm2() != q2s.norm2() {
        return Err(pre("q1 and q2 must have the same squared norm"));
    }
    let mut seeds1 = Vec::new();
    let mut seeds2 = Vec::new();
    for (s1, s2) in [(&p1s, &p2s), (&q1s, &q2s)] {
        // Equal norms make zero pins vanish on both sides together.
        if !s1.is_zero() {
            seeds1.push(s1.clone());
            seeds2.push(s2.clone());
        }
    }
    let frame1 = orthonormal_frame(&seeds1)?;
    let mut frame2 = orthonormal_frame(&seeds2)?;
    let mut linear = rotation_between(&frame1, &frame2);
    if linear.spatial_det().sign() == Ordering::Less {
        // The last frame vector is always a completed one (at most two
        // pins), so negating it does not disturb the pinned images.
        frame2[2] = -&frame2[2];
        linear = rotation_between(&frame1, &frame2);
    }
    let map = AffineMap { linear, translation: Vec4::origin() };
    debug_assert!(is_spatial_rotation(&map));
    debug_assert_eq!(map.apply(p1), p2.clone());
    debug_assert_eq!(map.apply(q1), q2.clone());
    Ok(map)
}

/// A spatial rotation carrying one line through the origin onto another of
/// the same slope.
pub fn srot_line_to_line(l1: &Line, l2: &Line) -> Result<AffineMap, XformError> {
    let origin = Vec4::origin();
    if !l1.contains(&origin) || !l2.contains(&origin) {
        return Err(pre("both lines must pass through the origin"));
    }
    if l1.slope() != l2.slope() {
        return Err(pre("lines must have equal slopes"));
    }
    let horizontal = |s: Vec3| Vec4::from_spatial(FieldElem::zero(), s);
    let (h1, h2) = match l1.slope() {
        Slope::Finite(_) => {
            // Representatives with time component 1; equal slopes give
            // them equal spatial norms.
            let scale1 = l1.dir().t.checked_inv().map_err(XformError::Field)?;
            let scale2 = l2.dir().t.checked_inv().map_err(XformError::Field)?;
            (
                horizontal(l1.dir().scale(&scale1).spatial()),
                horizontal(l2.dir().scale(&scale2).spatial()),
            )
        }
        Slope::Infinite => {
            // Both directions are horizontal; rescale the second to match
            // the first in norm.
            let ratio = l1
                .dir()
                .spatial()
                .norm2()
                .checked_div(&l2.dir().spatial().norm2())
                .map_err(XformError::Field)?;
            let factor = ratio.sqrt_nonneg()?;
            (
                horizontal(l1.dir().spatial()),
                horizontal(l2.dir().scale(&factor).spatial()),
            )
        }
    };
    let map = srot_from_frame(&h1, &origin, &h2, &origin)?;
    debug_assert_eq!(map.apply_line(l1), l2.clone());
    Ok(map)
}

/// A spatial rotation carrying a plane that contains the time axis onto
/// the t-x coordinate plane; the witness point `p` of the plane off the
/// time axis lands on (p_t, |p_s|, 0, 0).
pub fn srot_plane_to_tx(plane: &Plane, p: &Vec4) -> Result<AffineMap, XformError> {
    if !plane.contains_line(&Line::time_axis()) {
        return Err(pre("plane must contain the time axis"));
    }
    if !plane.contains(p) {
        return Err(pre("p must lie in the plane"));
    }
    let ps = p.spatial();
    if ps.is_zero() {
        return Err(pre("p must lie off the time axis"));
    }
    let len = ps.norm2().sqrt_nonneg()?;
    let from = Vec4::from_spatial(FieldElem::zero(), ps);
    let to = Vec4::new(FieldElem::zero(), len, FieldElem::zero(), FieldElem::zero());
    let origin = Vec4::origin();
    let map = srot_from_frame(&from, &origin, &to, &origin)?;
    debug_assert!(Plane::tx().contains(&map.apply(p)));
    Ok(map)
}

/// The half-turn of space about the given axis, time fixed: splits a
/// spatial vector into components along and orthogonal to the axis and
/// negates the orthogonal one.
pub fn rot180_about(axis: &Vec3) -> Result<AffineMap, XformError> {
    if axis.is_zero() {
        return Err(XformError::DegenerateInput("rotation axis must be nonzero".into()));
    }
    let n2 = axis.norm2();
    let a = axis.components();
    let mut linear = Mat4::identity();
    for i in 0..3 {
        for j in 0..3 {
            let mut v = &(a[i] * a[j]).double() / &n2;
            if i == j {
                v = v - FieldElem::one();
            }
            linear.set(i + 1, j + 1, v);
        }
    }
    let map = AffineMap { linear, translation: Vec4::origin() };
    debug_assert!(is_spatial_rotation(&map));
    debug_assert!(map.compose(&map).is_identity());
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::LineMeet;

    fn num(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn v4(t: &str, x: &str, y: &str, z: &str) -> Vec4 {
        Vec4::new(num(t), num(x), num(y), num(z))
    }

    fn v3(x: &str, y: &str, z: &str) -> Vec3 {
        Vec3::new(num(x), num(y), num(z))
    }

    #[test]
    fn frame_rotation_pins_both_vectors() {
        let p1 = v4("0", "3", "0", "0");
        let q1 = v4("0", "0", "4", "0");
        let p2 = v4("0", "0", "3", "0");
        let q2 = v4("0", "4", "0", "0");
        // Swapping two axes alone is a reflection; the completed third
        // axis must flip to stay a rotation.
        let r = srot_from_frame(&p1, &q1, &p2, &q2).unwrap();
        assert!(is_spatial_rotation(&r));
        assert_eq!(r.apply(&p1), p2);
        assert_eq!(r.apply(&q1), q2);
        assert_eq!(r.apply(&v4("0", "0", "0", "1")), v4("0", "0", "0", "-1"));
    }

    #[test]
    fn frame_rotation_handles_radical_norms() {
        let p1 = v4("0", "1", "1", "0");
        let p2 = v4("0", "sqrt(2)", "0", "0");
        let o = Vec4::origin();
        let r = srot_from_frame(&p1, &o, &p2, &o).unwrap();
        assert!(is_spatial_rotation(&r));
        assert_eq!(r.apply(&p1), p2);
    }

    #[test]
    fn frame_rotation_zero_pins_give_identity() {
        let o = Vec4::origin();
        let r = srot_from_frame(&o, &o, &o, &o).unwrap();
        assert_eq!(r, AffineMap::identity());
    }

    #[test]
    fn frame_rotation_validates_inputs() {
        let o = Vec4::origin();
        let p = v4("0", "1", "0", "0");
        let tilted = v4("1", "1", "0", "0");
        assert!(matches!(
            srot_from_frame(&tilted, &o, &p, &o),
            Err(XformError::PreconditionViolation(_))
        ));
        let not_orth = v4("0", "1", "1", "0");
        assert!(matches!(
            srot_from_frame(&p, &not_orth, &p, &not_orth),
            Err(XformError::PreconditionViolation(_))
        ));
        let longer = v4("0", "2", "0", "0");
        assert!(matches!(
            srot_from_frame(&p, &o, &longer, &o),
            Err(XformError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn line_rotation_finite_slope() {
        let l1 = Line::new(Vec4::origin(), v4("1", "3/5", "0", "0")).unwrap();
        let l2 = Line::new(Vec4::origin(), v4("-2", "0", "-6/5", "0")).unwrap();
        let r = srot_line_to_line(&l1, &l2).unwrap();
        assert!(is_spatial_rotation(&r));
        assert_eq!(r.apply_line(&l1), l2);
    }

    #[test]
    fn line_rotation_infinite_slope() {
        let l1 = Line::new(Vec4::origin(), v4("0", "1", "0", "0")).unwrap();
        let l2 = Line::new(Vec4::origin(), v4("0", "0", "2", "0")).unwrap();
        let r = srot_line_to_line(&l1, &l2).unwrap();
        assert_eq!(r.apply_line(&l1), l2);
    }

    #[test]
    fn line_rotation_rejects_mismatches() {
        let l1 = Line::new(Vec4::origin(), v4("1", "1", "0", "0")).unwrap();
        let steeper = Line::new(Vec4::origin(), v4("1", "2", "0", "0")).unwrap();
        assert!(matches!(
            srot_line_to_line(&l1, &steeper),
            Err(XformError::PreconditionViolation(_))
        ));
        let off = Line::new(v4("0", "0", "1", "0"), v4("1", "1", "0", "0")).unwrap();
        assert!(matches!(
            srot_line_to_line(&l1, &off),
            Err(XformError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn plane_rotation_flattens_to_tx() {
        let p = v4("2", "1", "1", "0");
        let plane = Plane::new(Vec4::origin(), [Vec4::t_hat(), v4("0", "1", "1", "0")]).unwrap();
        let r = srot_plane_to_tx(&plane, &p).unwrap();
        assert_eq!(r.apply(&p), v4("2", "sqrt(2)", "0", "0"));
        let tx = Plane::tx();
        for probe in [v4("1", "2", "2", "0"), v4("-3", "-1/2", "-1/2", "0")] {
            assert!(plane.contains(&probe));
            assert!(tx.contains(&r.apply(&probe)));
        }
    }

    #[test]
    fn plane_rotation_validates_inputs() {
        let plane = Plane::new(Vec4::origin(), [Vec4::t_hat(), Vec4::x_hat()]).unwrap();
        assert!(matches!(
            srot_plane_to_tx(&plane, &v4("0", "0", "1", "0")),
            Err(XformError::PreconditionViolation(_))
        ));
        assert!(matches!(
            srot_plane_to_tx(&plane, &v4("3", "0", "0", "0")),
            Err(XformError::PreconditionViolation(_))
        ));
        let no_axis = Plane::new(Vec4::origin(), [Vec4::x_hat(), Vec4::y_hat()]).unwrap();
        assert!(matches!(
            srot_plane_to_tx(&no_axis, &Vec4::x_hat()),
            Err(XformError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn half_turn_splits_along_axis() {
        let r = rot180_about(&v3("1", "1", "0")).unwrap();
        assert_eq!(r.apply(&v4("0", "1", "0", "0")), v4("0", "0", "1", "0"));
        assert_eq!(r.apply(&v4("0", "0", "0", "3")), v4("0", "0", "0", "-3"));
        assert_eq!(r.apply(&v4("5", "1", "1", "0")), v4("5", "1", "1", "0"));
        assert!(r.compose(&r).is_identity());
        assert!(is_spatial_rotation(&r));
        assert!(rot180_about(&Vec3::zero()).is_err());
    }

    #[test]
    fn half_turn_reverses_a_line_onto_itself() {
        // A worldline and its reversal meet only at the pivot; the
        // half-turn about an orthogonal axis swaps them.
        let dir = v4("1", "2", "0", "0");
        let l = Line::new(Vec4::origin(), dir.clone()).unwrap();
        let r = rot180_about(&v3("0", "0", "1")).unwrap();
        let image = r.apply_line(&l);
        let reversed = Line::new(Vec4::origin(), v4("1", "-2", "0", "0")).unwrap();
        assert_eq!(image, reversed);
        assert_eq!(l.intersect(&image), LineMeet::Point(Vec4::origin()));
    }
}
