use alloc::vec::Vec;

use crate::error::{DepthError, Result};
use crate::exact::{two_diff, Scalar};

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { x: 0.0, y: 0.0 };

    /// Constructs a point, rejecting NaN and infinities.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        check_finite(x)?;
        check_finite(y)?;
        Ok(PlanarPoint { x, y })
    }

    pub fn dot(self, other: PlanarPoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn is_origin(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    pub fn scale(self, k: f64) -> PlanarPoint {
        PlanarPoint {
            x: self.x * k,
            y: self.y * k,
        }
    }

    pub fn as_point_d(self) -> PointD {
        PointD {
            coords: alloc::vec![self.x, self.y],
        }
    }
}

impl From<(f64, f64)> for PlanarPoint {
    fn from((x, y): (f64, f64)) -> Self {
        PlanarPoint { x, y }
    }
}

/// A point in R^d, d >= 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PointD {
    coords: Vec<f64>,
}

impl PointD {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(DepthError::EmptyPoint);
        }
        for &c in &coords {
            check_finite(c)?;
        }
        Ok(PointD { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The planar view of a two-dimensional point.
    pub fn as_planar(&self) -> Result<PlanarPoint> {
        match self.coords[..] {
            [x, y] => Ok(PlanarPoint { x, y }),
            _ => Err(DepthError::NotPlanar(self.dim())),
        }
    }
}

impl From<PlanarPoint> for PointD {
    fn from(p: PlanarPoint) -> Self {
        p.as_point_d()
    }
}

pub(crate) fn check_finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(DepthError::NonFinite(v))
    }
}

/// One coordinate of a translated point, held exactly as `hi + lo`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Coord {
    pub hi: f64,
    pub lo: f64,
}

impl Coord {
    #[inline]
    pub fn exact(v: f64) -> Self {
        Coord { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_diff(a, b);
        Coord { hi, lo }
    }

    #[inline]
    pub fn lift<S: Scalar>(self) -> S {
        if self.lo == 0.0 {
            S::from_f64(self.hi)
        } else {
            S::from_f64(self.hi) + S::from_f64(self.lo)
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Coord {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// A planar vector `x - q` stored without rounding. `hi` carries the rounded
/// difference, so its signs and zero tests are exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Shifted {
    pub x: Coord,
    pub y: Coord,
}

impl Shifted {
    #[inline]
    pub fn between(p: PlanarPoint, origin: PlanarPoint) -> Self {
        Shifted {
            x: Coord::diff(p.x, origin.x),
            y: Coord::diff(p.y, origin.y),
        }
    }

    #[inline]
    pub fn exact(p: PlanarPoint) -> Self {
        Shifted {
            x: Coord::exact(p.x),
            y: Coord::exact(p.y),
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x.hi == 0.0 && self.y.hi == 0.0
    }

    /// Rotation by +90 degrees; exact.
    #[inline]
    pub fn perp(self) -> Self {
        Shifted {
            x: self.y.neg(),
            y: self.x,
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Shifted {
            x: self.x.neg(),
            y: self.y.neg(),
        }
    }

    /// Nearest `f64` approximation.
    #[inline]
    pub fn approx(self) -> PlanarPoint {
        PlanarPoint {
            x: self.x.hi + self.x.lo,
            y: self.y.hi + self.y.lo,
        }
    }
}
