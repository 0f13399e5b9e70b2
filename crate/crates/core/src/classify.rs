//! Verdicts over finite transformation samples: which isometry family the
//! sample is consistent with, how each element runs a clock, and the
//! time-axis conditions that characterize membership.

use crate::efield::{FieldElem, FieldError};
use crate::geom::{Line, Vec4};
use crate::xform::{is_kappa_isometry, is_trivial, kappa_of, AffineMap, XformError};
use serde::ser::SerializeStruct;
use std::cmp::Ordering;
use std::fmt;

/// Family verdict for a sample. `Poincare`/`Euclidean` carry the positive
/// speed scale c with kappa = 1/c^2 resp. -1/c^2; `Galilean` has kappa 0;
/// `TrivialOnly` fixes no kappa at all, so it carries none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KinClass {
    TrivialOnly,
    Galilean,
    Poincare { c: FieldElem },
    Euclidean { c: FieldElem },
}

impl KinClass {
    pub fn variant_name(&self) -> &'static str {
        match self {
            KinClass::TrivialOnly => "trivial_only",
            KinClass::Galilean => "galilean",
            KinClass::Poincare { .. } => "poincare",
            KinClass::Euclidean { .. } => "euclidean",
        }
    }

    pub fn kappa(&self) -> Option<FieldElem> {
        let c = match self {
            KinClass::TrivialOnly => return None,
            KinClass::Galilean => return Some(FieldElem::zero()),
            KinClass::Poincare { c } => return Some(inv_square(c)),
            KinClass::Euclidean { c } => c,
        };
        Some(-inv_square(c))
    }

    pub fn c(&self) -> Option<&FieldElem> {
        match self {
            KinClass::Poincare { c } | KinClass::Euclidean { c } => Some(c),
            _ => None,
        }
    }
}

fn inv_square(c: &FieldElem) -> FieldElem {
    c.square().checked_inv().expect("positive scale")
}

impl serde::Serialize for KinClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let kappa = self.kappa();
        let n = 1 + kappa.iter().count() + self.c().iter().count();
        let mut s = serializer.serialize_struct("KinClass", n)?;
        s.serialize_field("variant", self.variant_name())?;
        if let Some(k) = &kappa {
            s.serialize_field("kappa", k)?;
        }
        if let Some(c) = self.c() {
            s.serialize_field("c", c)?;
        }
        s.end()
    }
}

/// Witness for a classification failure: the element that breaks
/// membership, the kappa it was tested against (with its source element),
/// and every moving element's own kappa for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Inconsistency {
    pub offender: usize,
    pub kappa: Option<FieldElem>,
    pub kappa_source: Option<usize>,
    pub disagreeing: Option<(usize, FieldElem)>,
    pub moving_kappas: Vec<(usize, FieldElem)>,
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kappa, self.kappa_source) {
            (Some(k), Some(src)) => write!(
                f,
                "element {} is not a kappa-isometry for kappa = {} (extracted from element {})",
                self.offender, k, src
            )?,
            _ => write!(
                f,
                "no element is moving, yet element {} is not trivial",
                self.offender
            )?,
        }
        if let Some((idx, k)) = &self.disagreeing {
            write!(f, "; element {idx} moves with kappa = {k}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("empty input: nothing to classify")]
    EmptyInput,
    #[error("sample fits no single family: {0}")]
    Inconsistent(Inconsistency),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Xform(#[from] XformError),
}

/// Classifies a nonempty sample: with no moving element every member must
/// be trivial; otherwise kappa is read off the first moving element, every
/// member must be a kappa-isometry for it, and the sign of kappa selects
/// the family. A finite sample can only ever be *consistent* with a
/// family, so failure always carries a concrete witness.
pub fn classify_set(ts: &[AffineMap]) -> Result<KinClass, ClassifyError> {
    if ts.is_empty() {
        return Err(ClassifyError::EmptyInput);
    }
    let mut movers = Vec::new();
    for (i, f) in ts.iter().enumerate() {
        match kappa_of(f) {
            Ok(k) => movers.push((i, k)),
            Err(XformError::NotMoving) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let Some((source, kappa)) = movers.first().cloned() else {
        for (i, f) in ts.iter().enumerate() {
            if !is_trivial(f) {
                return Err(ClassifyError::Inconsistent(Inconsistency {
                    offender: i,
                    kappa: None,
                    kappa_source: None,
                    disagreeing: None,
                    moving_kappas: Vec::new(),
                }));
            }
        }
        return Ok(KinClass::TrivialOnly);
    };
    for (j, f) in ts.iter().enumerate() {
        if !is_kappa_isometry(f, &kappa) {
            let disagreeing = movers.iter().find(|(_, k)| *k != kappa).cloned();
            return Err(ClassifyError::Inconsistent(Inconsistency {
                offender: j,
                kappa: Some(kappa),
                kappa_source: Some(source),
                disagreeing,
                moving_kappas: movers,
            }));
        }
    }
    match kappa.sign() {
        Ordering::Equal => Ok(KinClass::Galilean),
        Ordering::Greater => {
            let c = kappa.checked_inv()?.sqrt_nonneg()?;
            Ok(KinClass::Poincare { c })
        }
        Ordering::Less => {
            let c = (-&kappa).checked_inv()?.sqrt_nonneg()?;
            Ok(KinClass::Euclidean { c })
        }
    }
}

/// How one observer's clock runs according to another, read off the
/// transformation between their worldviews: the images of the unit time
/// vector and the origin either share a space component (`Rest`) or their
/// time gap compares against one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClockStatus {
    Rest,
    Slow,
    Fast,
    Accurate,
}

pub fn clock_status(f: &AffineMap) -> ClockStatus {
    let tick = f.apply(&Vec4::t_hat());
    let origin = f.apply(&Vec4::origin());
    if tick.spatial() == origin.spatial() {
        return ClockStatus::Rest;
    }
    let gap = (&tick.t - &origin.t).abs();
    match gap.compare(&FieldElem::one()) {
        Ordering::Greater => ClockStatus::Slow,
        Ordering::Less => ClockStatus::Fast,
        Ordering::Equal => ClockStatus::Accurate,
    }
}

/// Per-element record for the two group conditions: the image of the time
/// axis is a line (holds structurally for invertible affine maps, recorded
/// as checked), and an element fixing the time axis setwise must be
/// trivial.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GroupConditionEntry {
    pub index: usize,
    pub time_axis_image_is_line: bool,
    pub fixes_time_axis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_given_fixed_axis: Option<bool>,
}

impl GroupConditionEntry {
    pub fn passes(&self) -> bool {
        self.time_axis_image_is_line && self.trivial_given_fixed_axis.unwrap_or(true)
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct GroupConditionReport {
    pub entries: Vec<GroupConditionEntry>,
}

impl GroupConditionReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(GroupConditionEntry::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GroupConditionEntry> {
        self.entries.iter().filter(|e| !e.passes())
    }
}

pub fn check_group_conditions(sample: &[AffineMap]) -> GroupConditionReport {
    let axis = Line::time_axis();
    let entries = sample
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let image = g.apply_line(&axis);
            let fixes = image == axis;
            GroupConditionEntry {
                index,
                time_axis_image_is_line: true,
                fixes_time_axis: fixes,
                trivial_given_fixed_axis: fixes.then(|| is_trivial(g)),
            }
        })
        .collect();
    GroupConditionReport { entries }
}
