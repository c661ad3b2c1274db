//! Influence regions and the exact-sign predicates shared by every engine.
//!
//! Regions are closed: a point on the boundary of a lune is inside it. All
//! membership decisions go through [`crate::exact`], so they are exact for
//! every finite input and never depend on how a formula happens to be
//! arranged.

use core::cmp::Ordering;

use crate::error::{DepthError, Result};
use crate::exact::{exact_sign, Scalar};
use crate::point::{PlanarPoint, PointD, Shifted};

/// The skeleton parameter, a finite real `>= 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Beta(f64);

impl Beta {
    /// Spherical depth.
    pub const SPHERICAL: Beta = Beta(1.0);
    /// Lens depth.
    pub const LENS: Beta = Beta(2.0);

    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta >= 1.0 {
            Ok(Beta(beta))
        } else {
            Err(DepthError::InvalidBeta(beta))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_spherical(self) -> bool {
        self.0 == 1.0
    }
}

/// The lune `B(ci, r) ∩ B(cj, r)` spanned by two data points.
///
/// `ci`, `cj` and `r` are rounded values kept for inspection; [`contains`]
/// decides membership exactly from the endpoints and `beta`.
///
/// [`contains`]: InfluenceRegion::contains
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceRegion {
    pub xi: PointD,
    pub xj: PointD,
    pub beta: Beta,
    pub ci: PointD,
    pub cj: PointD,
    pub r: f64,
}

/// Builds the influence region of `xi` and `xj`.
pub fn influence_region(xi: &PointD, xj: &PointD, beta: Beta) -> Result<InfluenceRegion> {
    same_dim(xi.dim(), xj.dim())?;
    let b = beta.value();
    let half = b / 2.0;
    let ci = xi
        .coords()
        .iter()
        .zip(xj.coords())
        .map(|(&a, &c)| half * a + (1.0 - half) * c)
        .collect();
    let cj = xi
        .coords()
        .iter()
        .zip(xj.coords())
        .map(|(&a, &c)| (1.0 - half) * a + half * c)
        .collect();
    let dist_sq: f64 = xi
        .coords()
        .iter()
        .zip(xj.coords())
        .map(|(&a, &c)| (a - c) * (a - c))
        .sum();
    Ok(InfluenceRegion {
        xi: xi.clone(),
        xj: xj.clone(),
        beta,
        ci: PointD::new(ci)?,
        cj: PointD::new(cj)?,
        r: half * libm::sqrt(dist_sq),
    })
}

impl InfluenceRegion {
    /// Closed membership: `beta * |xi - xj| / 2 >= max(|q - ci|, |q - cj|)`.
    pub fn contains(&self, q: &PointD) -> Result<bool> {
        same_dim(self.xi.dim(), q.dim())?;
        Ok(pair_contains(
            self.xi.coords(),
            self.xj.coords(),
            q.coords(),
            self.beta.value(),
        ))
    }
}

/// Sign class of the angle `u O v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleClass {
    Acute,
    Right,
    ObtuseOrStraight,
}

/// Classifies the angle at the origin between `u` and `v` by the sign of
/// their dot product.
pub fn angle_at_origin_classification(u: PlanarPoint, v: PlanarPoint) -> Result<AngleClass> {
    if u.is_origin() || v.is_origin() {
        return Err(DepthError::ZeroVector);
    }
    Ok(match dot_sign(Shifted::exact(u), Shifted::exact(v)) {
        Ordering::Greater => AngleClass::Acute,
        Ordering::Equal => AngleClass::Right,
        Ordering::Less => AngleClass::ObtuseOrStraight,
    })
}

pub(crate) fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(DepthError::DimensionMismatch { expected, found })
    }
}

// ---------------------------------------------------------------------------
// Exact predicates
// ---------------------------------------------------------------------------

/// Membership of `q` in the closed region of `(xi, xj)` in any dimension,
/// written in the centered form with squared norms:
/// `beta^2 |xi - xj|^2 >= |2q - 2c|^2` for both centers.
pub(crate) fn pair_contains(xi: &[f64], xj: &[f64], q: &[f64], beta: f64) -> bool {
    ball_contains(xi, xj, q, beta) && ball_contains(xj, xi, q, beta)
}

/// `q` in the ball centred at `(beta/2) near + (1 - beta/2) far`.
fn ball_contains(near: &[f64], far: &[f64], q: &[f64], beta: f64) -> bool {
    exact_sign!(|S| {
        let b = S::from_f64(beta);
        let two = S::from_f64(2.0);
        let mut radius = S::from_f64(0.0);
        let mut offset = S::from_f64(0.0);
        for ((&a, &c), &t) in near.iter().zip(far).zip(q) {
            let d = S::from_f64(a) - S::from_f64(c);
            radius = radius + d.clone() * d;
            let o = two.clone() * S::from_f64(t)
                - b.clone() * S::from_f64(a)
                - (two.clone() - b.clone()) * S::from_f64(c);
            offset = offset + o.clone() * o;
        }
        b.clone() * b * radius - offset
    }) != Ordering::Less
}

#[inline]
pub(crate) fn dot_sign(u: Shifted, v: Shifted) -> Ordering {
    if let Some(s) = dot_fast(u.approx(), v.approx()) {
        return s;
    }
    exact_sign!(|S| u.x.lift::<S>() * v.x.lift::<S>() + u.y.lift::<S>() * v.y.lift::<S>())
}

/// Sign of `u x v`; positive when `v` is counter-clockwise from `u`.
#[inline]
pub(crate) fn cross_sign(u: Shifted, v: Shifted) -> Ordering {
    let (a, b) = (u.approx(), v.approx());
    if let Some(s) = dot_fast(a, PlanarPoint { x: b.y, y: -b.x }) {
        return s;
    }
    exact_sign!(|S| u.x.lift::<S>() * v.y.lift::<S>() - u.y.lift::<S>() * v.x.lift::<S>())
}

// Static-bound filter for a two-term dot product of rounded translated
// vectors; the dropped low parts add at most one epsilon per product.
#[inline]
fn dot_fast(u: PlanarPoint, v: PlanarPoint) -> Option<Ordering> {
    let p = u.x * v.x;
    let r = u.y * v.y;
    let s = p + r;
    let bound = 8.0 * f64::EPSILON * (p.abs() + r.abs()) + 4.0 * f64::MIN_POSITIVE;
    if s > bound {
        Some(Ordering::Greater)
    } else if -s > bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Orientation of `(a, b, c)`: positive for a counter-clockwise turn.
pub(crate) fn orient_sign(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> Ordering {
    exact_sign!(|S| {
        let (cx, cy) = (S::from_f64(c.x), S::from_f64(c.y));
        (S::from_f64(a.x) - cx.clone()) * (S::from_f64(b.y) - cy.clone())
            - (S::from_f64(a.y) - cy) * (S::from_f64(b.x) - cx)
    })
}

/// Halfplane half of the translated criterion: `(beta - 1)|a|^2 - beta a.b >= 0`.
#[inline]
pub(crate) fn skeleton_halfplane(a: Shifted, b: Shifted, beta: f64) -> bool {
    skeleton_side(a, a, b, beta)
}

/// Disk half of the translated criterion: `(beta - 1)|b|^2 - beta a.b >= 0`.
#[inline]
pub(crate) fn skeleton_outside_disk(a: Shifted, b: Shifted, beta: f64) -> bool {
    skeleton_side(b, a, b, beta)
}

fn skeleton_side(w: Shifted, a: Shifted, b: Shifted, beta: f64) -> bool {
    if let Some(s) = skeleton_side_fast(w.approx(), a.approx(), b.approx(), beta) {
        return s != Ordering::Less;
    }
    exact_sign!(|S| {
        let bt = S::from_f64(beta);
        let (ax, ay) = (a.x.lift::<S>(), a.y.lift::<S>());
        let (bx, by) = (b.x.lift::<S>(), b.y.lift::<S>());
        let (wx, wy) = (w.x.lift::<S>(), w.y.lift::<S>());
        let norm = wx.clone() * wx + wy.clone() * wy;
        (bt.clone() - S::from_f64(1.0)) * norm - bt * (ax * bx + ay * by)
    }) != Ordering::Less
}

// Static-bound filter for `skeleton_side` evaluated on the rounded vectors.
// Dropping the low parts perturbs each coordinate by at most half an ulp, so
// every product carries a relative error of a few epsilon; 16 epsilon of the
// absolute term sum covers those and the rounding of the evaluation.
#[inline]
fn skeleton_side_fast(w: PlanarPoint, a: PlanarPoint, b: PlanarPoint, beta: f64) -> Option<Ordering> {
    let norm = w.x * w.x + w.y * w.y;
    let (p, r) = (a.x * b.x, a.y * b.y);
    let bm1 = beta - 1.0;
    let s = bm1 * norm - beta * (p + r);
    let bound = 16.0 * f64::EPSILON * (bm1.abs() * norm + beta.abs() * (p.abs() + r.abs())) + 16.0 * f64::MIN_POSITIVE;
    if s > bound {
        Some(Ordering::Greater)
    } else if -s > bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// The origin lies in the closed region of the translated pair `(a, b)`.
pub(crate) fn origin_in_skeleton(a: Shifted, b: Shifted, beta: f64) -> bool {
    skeleton_halfplane(a, b, beta) && skeleton_outside_disk(a, b, beta)
}
