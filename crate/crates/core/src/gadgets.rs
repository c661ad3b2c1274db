//! Element-uniqueness gadgets: point sets whose depth at the origin reveals
//! whether a list of reals has repeated values.
//!
//! * The spherical gadget places four copies of each value, rotated by
//!   quarter turns. The origin's spherical depth is `4n² + 2n` exactly when
//!   the values are distinct.
//! * The angle gadget places each value `b` at `(b, 0)` and at polar angle θ.
//!   With `θ = acos(1 - 1/β)` the origin's β-skeleton depth is `n + 2c`,
//!   where `c` counts pairs of equal values.
//!
//! In the angle gadget the only containing pairs sit exactly on a region
//! boundary. Since membership is decided exactly, the rotated copies are
//! placed [`ANGLE_MARGIN`] radians past the critical angle so that rounding
//! in `cos`/`sin` cannot push them outside.

use alloc::vec::Vec;

use crate::beta::beta_depth_fast;
use crate::error::{DepthError, Result};
use crate::geometry::Beta;
use crate::point::{check_finite, PlanarPoint};
use crate::reference::Dataset;
use crate::spherical::spherical_depth_fast;

/// Extra rotation applied past the critical angle of the angle gadget.
/// Values whose ratio differs from 1 by less than roughly this much are
/// treated as equal.
pub const ANGLE_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GadgetKind {
    /// Four quarter-turn copies, spherical depth.
    Spherical,
    /// Two copies at π/3, lens depth.
    Lens,
    /// Two copies at `acos(1 - 1/β)`, β-skeleton depth for β > 1.
    GeneralBeta(Beta),
}

impl GadgetKind {
    pub fn beta(self) -> Beta {
        match self {
            GadgetKind::Spherical => Beta::SPHERICAL,
            GadgetKind::Lens => Beta::LENS,
            GadgetKind::GeneralBeta(b) => b,
        }
    }
}

/// A list of strictly positive values and the gadget to build from them.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetSpec {
    values: Vec<f64>,
    kind: GadgetKind,
}

impl GadgetSpec {
    /// Shifts the values onto the positive axis when any is `<= 0`; the
    /// shift keeps equal values equal and distinct values distinct.
    pub fn new(values: &[f64], kind: GadgetKind) -> Result<Self> {
        for &v in values {
            check_finite(v)?;
        }
        if values.len() < 2 {
            return Err(DepthError::TooFewPoints {
                needed: 2,
                found: values.len(),
            });
        }
        if let GadgetKind::GeneralBeta(b) = kind {
            if b.value() <= 1.0 {
                return Err(DepthError::InvalidBeta(b.value()));
            }
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let values = if min > 0.0 {
            values.to_vec()
        } else {
            values.iter().map(|v| v - (min - 1.0)).collect()
        };
        Ok(GadgetSpec { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> GadgetKind {
        self.kind
    }

    pub fn build(&self) -> Result<Dataset> {
        match self.kind {
            GadgetKind::Spherical => build_spherical_gadget(&self.values),
            kind => build_angle_gadget(&self.values, separation_angle(kind.beta())?),
        }
    }

    /// The depth count the gadget has when all values are distinct.
    pub fn unique_count(&self) -> u64 {
        let n = self.values.len() as u64;
        match self.kind {
            GadgetKind::Spherical => 4 * n * n + 2 * n,
            _ => n,
        }
    }

    /// Builds the gadget, computes the depth of the origin, and compares it
    /// with the distinct-values count.
    pub fn decide(&self) -> Result<UniquenessDecision> {
        let data = self.build()?;
        let raw_count = match self.kind {
            GadgetKind::Spherical => spherical_depth_fast(PlanarPoint::ORIGIN, &data)?.raw_count,
            kind => beta_depth_fast(PlanarPoint::ORIGIN, &data, kind.beta())?.raw_count,
        };
        let expected = self.unique_count();
        let duplicate_pairs = match self.kind {
            GadgetKind::Spherical => None,
            _ => Some(raw_count.saturating_sub(expected) / 2),
        };
        Ok(UniquenessDecision {
            unique: raw_count == expected,
            raw_count,
            expected,
            duplicate_pairs,
        })
    }
}

/// Outcome of a gadget run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniquenessDecision {
    pub unique: bool,
    pub raw_count: u64,
    /// The count for distinct values.
    pub expected: u64,
    /// For the two-copy gadgets, `(raw_count - n) / 2`.
    pub duplicate_pairs: Option<u64>,
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(DepthError::TooFewPoints { needed: 1, found: 0 });
    }
    for &v in values {
        check_finite(v)?;
        if v <= 0.0 {
            return Err(DepthError::NonPositiveValue(v));
        }
    }
    Ok(())
}

/// The `4n` points `R^k (a_i, 1)`, `k = 0..3`, with `R` the quarter turn:
/// `(a, 1), (-1, a), (-a, -1), (1, -a)`. Copies are grouped by `k`.
pub fn build_spherical_gadget(values: &[f64]) -> Result<Dataset> {
    check_values(values)?;
    let mut pts = Vec::with_capacity(4 * values.len());
    for k in 0..4 {
        for &a in values {
            pts.push(match k {
                0 => PlanarPoint { x: a, y: 1.0 },
                1 => PlanarPoint { x: -1.0, y: a },
                2 => PlanarPoint { x: -a, y: -1.0 },
                _ => PlanarPoint { x: 1.0, y: -a },
            });
        }
    }
    Dataset::from_planar(&pts)
}

/// The `2n` points `(b_i, 0)` followed by `(b_i cos θ, b_i sin θ)`.
pub fn build_angle_gadget(values: &[f64], theta: f64) -> Result<Dataset> {
    check_values(values)?;
    if !(theta > 0.0 && theta < core::f64::consts::PI) {
        return Err(DepthError::InvalidAngle(theta));
    }
    let (sin, cos) = (libm::sin(theta), libm::cos(theta));
    let mut pts: Vec<PlanarPoint> = values.iter().map(|&b| PlanarPoint { x: b, y: 0.0 }).collect();
    pts.extend(values.iter().map(|&b| PlanarPoint {
        x: b * cos,
        y: b * sin,
    }));
    Dataset::from_planar(&pts)
}

/// `acos(1 - 1/β)`, the angle at which equal values sit on each other's
/// region boundary.
pub fn critical_angle(beta: Beta) -> f64 {
    libm::acos(1.0 - 1.0 / beta.value())
}

/// [`critical_angle`] plus [`ANGLE_MARGIN`]; the angle the gadget uses.
pub fn separation_angle(beta: Beta) -> Result<f64> {
    if beta.value() <= 1.0 {
        return Err(DepthError::InvalidBeta(beta.value()));
    }
    Ok(critical_angle(beta) + ANGLE_MARGIN)
}

/// True when the values are distinct, decided by the spherical gadget.
pub fn decide_uniqueness_spherical(values: &[f64]) -> Result<UniquenessDecision> {
    GadgetSpec::new(values, GadgetKind::Spherical)?.decide()
}

/// Lens gadget decision; also reports the number of equal-value pairs.
pub fn decide_uniqueness_lens(values: &[f64]) -> Result<UniquenessDecision> {
    GadgetSpec::new(values, GadgetKind::Lens)?.decide()
}
