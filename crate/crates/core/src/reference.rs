//! Brute-force depth oracles.
//!
//! [`beta_depth_brute`] enumerates all `C(n, 2)` pairs in any dimension and is
//! the reference every fast engine is compared against. [`simplicial_depth_brute`]
//! enumerates all closed triangles of a planar dataset.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{DepthError, Result};
use crate::geometry::{cross_sign, orient_sign, pair_contains, same_dim, Beta};
use crate::point::{check_finite, PlanarPoint, PointD, Shifted};

/// An ordered multiset of points sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    dim: usize,
    coords: Vec<f64>,
}

impl Dataset {
    pub fn new(points: &[PointD]) -> Result<Self> {
        let dim = points.first().map_or(0, PointD::dim);
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            same_dim(dim, p.dim())?;
            coords.extend_from_slice(p.coords());
        }
        Ok(Dataset { dim, coords })
    }

    pub fn from_planar(points: &[PlanarPoint]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * 2);
        for p in points {
            check_finite(p.x)?;
            check_finite(p.y)?;
            coords.push(p.x);
            coords.push(p.y);
        }
        Ok(Dataset { dim: 2, coords })
    }

    /// Builds a dataset from row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::EmptyPoint);
        }
        if coords.len() % dim != 0 {
            return Err(DepthError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        for &c in &coords {
            check_finite(c)?;
        }
        Ok(Dataset { dim, coords })
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.coords.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// The points as planar points; fails unless `dim == 2`.
    pub fn planar_points(&self) -> Result<Vec<PlanarPoint>> {
        self.require_planar()?;
        Ok(self
            .coords
            .chunks_exact(2)
            .map(|c| PlanarPoint { x: c[0], y: c[1] })
            .collect())
    }

    pub(crate) fn require_planar(&self) -> Result<()> {
        if self.dim == 2 || self.coords.is_empty() {
            Ok(())
        } else {
            Err(DepthError::NotPlanar(self.dim))
        }
    }

    pub(crate) fn require_at_least(&self, needed: usize) -> Result<()> {
        let found = self.len();
        if found < needed {
            Err(DepthError::TooFewPoints { needed, found })
        } else {
            Ok(())
        }
    }
}

/// Which engine produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    SphericalFast,
    BetaFast,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::SphericalFast => "spherical_fast",
            Method::BetaFast => "beta_fast",
        }
    }
}

/// What was counted: skeleton regions for some beta, or triangles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DepthKind {
    Skeleton(Beta),
    Simplicial,
}

/// A depth value as an exact count plus its normalized form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthResult {
    pub raw_count: u64,
    pub normalized: f64,
    pub n: usize,
    pub method: Method,
    pub kind: DepthKind,
}

impl DepthResult {
    pub(crate) fn pairwise(raw_count: u64, n: usize, method: Method, beta: Beta) -> Self {
        let total = pair_count(n);
        debug_assert!(raw_count <= total);
        DepthResult {
            raw_count,
            normalized: raw_count as f64 / total as f64,
            n,
            method,
            kind: DepthKind::Skeleton(beta),
        }
    }

    /// Number of regions the raw count is out of.
    pub fn denominator(&self) -> u64 {
        match self.kind {
            DepthKind::Skeleton(_) => pair_count(self.n),
            DepthKind::Simplicial => triple_count(self.n),
        }
    }
}

/// `C(n, 2)`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// `C(n, 3)`.
pub fn triple_count(n: usize) -> u64 {
    let n = n as u64;
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Counts the pairs whose closed influence region contains `q`.
pub fn beta_depth_brute(q: &[f64], data: &Dataset, beta: Beta) -> Result<DepthResult> {
    data.require_at_least(2)?;
    same_dim(data.dim(), q.len())?;
    let b = beta.value();
    let n = data.len();
    let mut raw = 0u64;
    for i in 0..n {
        let xi = data.point(i);
        for j in i + 1..n {
            if pair_contains(xi, data.point(j), q, b) {
                raw += 1;
            }
        }
    }
    Ok(DepthResult::pairwise(raw, n, Method::Brute, beta))
}

/// Counts the closed triangles over 3-subsets of a planar dataset that
/// contain `q`. Collinear triples contain `q` when it lies on the segment
/// they span.
pub fn simplicial_depth_brute(q: PlanarPoint, data: &Dataset) -> Result<DepthResult> {
    data.require_planar()?;
    data.require_at_least(3)?;
    let pts = data.planar_points()?;
    let n = pts.len();
    let shifted: Vec<Shifted> = pts.iter().map(|&p| Shifted::between(p, q)).collect();

    // side[i * n + j] = sign of orient(x_i, x_j, q)
    let mut side = vec![0i8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let s = cross_sign(shifted[i], shifted[j]) as i8;
            side[i * n + j] = s;
            side[j * n + i] = -s;
        }
    }

    let mut raw = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let sij = side[i * n + j];
            for k in j + 1..n {
                let sjk = side[j * n + k];
                let ski = side[k * n + i];
                let inside = if sij != 0 && sjk != 0 && ski != 0 {
                    sij == sjk && sjk == ski
                } else {
                    closed_triangle_contains(pts[i], pts[j], pts[k], q, [sij, sjk, ski])
                };
                if inside {
                    raw += 1;
                }
            }
        }
    }
    let total = triple_count(n);
    Ok(DepthResult {
        raw_count: raw,
        normalized: raw as f64 / total as f64,
        n,
        method: Method::Brute,
        kind: DepthKind::Simplicial,
    })
}

/// Point in closed triangle given the three edge orientations with respect to
/// `q`. Handles collinear and coincident vertices.
fn closed_triangle_contains(
    a: PlanarPoint,
    b: PlanarPoint,
    c: PlanarPoint,
    q: PlanarPoint,
    sides: [i8; 3],
) -> bool {
    if orient_sign(a, b, c) != Ordering::Equal {
        let has_pos = sides.iter().any(|&s| s > 0);
        let has_neg = sides.iter().any(|&s| s < 0);
        return !(has_pos && has_neg);
    }
    on_segment(a, b, q) || on_segment(b, c, q) || on_segment(a, c, q)
}

fn on_segment(p: PlanarPoint, r: PlanarPoint, q: PlanarPoint) -> bool {
    orient_sign(p, r, q) == Ordering::Equal
        && p.x.min(r.x) <= q.x
        && q.x <= p.x.max(r.x)
        && p.y.min(r.y) <= q.y
        && q.y <= p.y.max(r.y)
}

/// Closed-triangle containment as a standalone predicate.
pub fn triangle_contains(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint, q: PlanarPoint) -> bool {
    let sides = [orient_sign(a, b, q), orient_sign(b, c, q), orient_sign(c, a, q)].map(|s| s as i8);
    closed_triangle_contains(a, b, c, q, sides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(pts: &[(f64, f64)]) -> Dataset {
        let v: Vec<PlanarPoint> = pts.iter().map(|&p| p.into()).collect();
        Dataset::from_planar(&v).unwrap()
    }

    const AXES: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];

    #[test]
    fn axes_around_origin() {
        let s = planar(&AXES);
        for beta in [Beta::SPHERICAL, Beta::LENS] {
            let r = beta_depth_brute(&[0.0, 0.0], &s, beta).unwrap();
            assert_eq!(r.raw_count, 6);
            assert_eq!(r.normalized, 1.0);
        }
        let far = beta_depth_brute(&[10.0, 10.0], &planar(&AXES[..2]), Beta::SPHERICAL).unwrap();
        assert_eq!(far.raw_count, 0);
    }

    #[test]
    fn brute_errors() {
        let one = planar(&[(1.0, 1.0)]);
        assert_eq!(
            beta_depth_brute(&[0.0, 0.0], &one, Beta::LENS),
            Err(DepthError::TooFewPoints { needed: 2, found: 1 })
        );
        assert_eq!(
            beta_depth_brute(&[0.0], &planar(&AXES), Beta::LENS),
            Err(DepthError::DimensionMismatch { expected: 2, found: 1 })
        );
        assert_eq!(
            simplicial_depth_brute(PlanarPoint::ORIGIN, &planar(&AXES[..2])),
            Err(DepthError::TooFewPoints { needed: 3, found: 2 })
        );
    }

    #[test]
    fn simplicial_examples() {
        let tri = planar(&[(1.0, 0.0), (-1.0, 1.0), (-1.0, -1.0)]);
        let r = simplicial_depth_brute(PlanarPoint::ORIGIN, &tri).unwrap();
        assert_eq!((r.raw_count, r.normalized), (1, 1.0));
        let r = simplicial_depth_brute(PlanarPoint { x: 5.0, y: 5.0 }, &tri).unwrap();
        assert_eq!(r.raw_count, 0);
        let r = simplicial_depth_brute(PlanarPoint::ORIGIN, &planar(&AXES)).unwrap();
        assert_eq!((r.raw_count, r.normalized), (4, 1.0));
    }

    #[test]
    fn collinear_triples_contain_only_points_on_the_segment() {
        let line = planar(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        let on = simplicial_depth_brute(PlanarPoint { x: 1.5, y: 1.5 }, &line).unwrap();
        let beyond = simplicial_depth_brute(PlanarPoint { x: 3.0, y: 3.0 }, &line).unwrap();
        assert_eq!((on.raw_count, beyond.raw_count), (1, 0));
        let stacked = planar(&[(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]);
        let off = simplicial_depth_brute(PlanarPoint { x: 2.0, y: 2.0 }, &stacked).unwrap();
        let at = simplicial_depth_brute(PlanarPoint { x: 1.0, y: 1.0 }, &stacked).unwrap();
        assert_eq!((off.raw_count, at.raw_count), (0, 1));
    }

    #[test]
    fn higher_dimensions() {
        let pts: Vec<PointD> = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [3.0, 1.0, 1.0]]
            .iter()
            .map(|c| PointD::new(c.to_vec()).unwrap())
            .collect();
        let s = Dataset::new(&pts).unwrap();
        // the antipodal pair and the obtuse pair (-1,0,0),(3,1,1)
        let r = beta_depth_brute(&[0.0, 0.0, 0.0], &s, Beta::SPHERICAL).unwrap();
        assert_eq!(r.raw_count, 2);
        assert_eq!(simplicial_depth_brute(PlanarPoint::ORIGIN, &s), Err(DepthError::NotPlanar(3)));
    }
}
