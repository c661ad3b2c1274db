//! Planar beta-skeleton depth through halfplane and disk range counting.
//!
//! After translating the query to the origin, the origin lies in the region
//! of a pair `(a, b)` exactly when
//!
//! ```text
//! a . b <= |a|^2 / 2k    and    |b - k a|^2 >= k^2 |a|^2,    k = beta / (2 (beta - 1)),
//! ```
//!
//! so for each `a` the partners are the points of a closed halfplane minus an
//! open disk through the origin. Summing those counts over all `a` counts
//! every containing pair twice. For `beta = 1` the disk disappears and the
//! halfplane becomes `a . b <= 0`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::counting::{
    minus, ApproxDisk, ApproxHalfplane, BBox, CountingIndex, CountingRegion, Coverage, DiskQuery,
    HalfplaneQuery, DEFAULT_LEAF_SIZE,
};
use crate::error::{DepthError, Result};
use crate::geometry::{dot_sign, origin_in_skeleton, skeleton_halfplane, skeleton_outside_disk, Beta};
use crate::point::{PlanarPoint, Shifted};
use crate::reference::{Dataset, DepthResult, Method};
use crate::spherical::coincident_pairs;

/// Halfplane and disk attached to one translated data point `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaTwoGeometry {
    pub a: PlanarPoint,
    pub beta: Beta,
    pub k: f64,
    /// Foot of the halfplane boundary on the ray through `a`.
    pub p: PlanarPoint,
    pub c: PlanarPoint,
    pub r_sq: f64,
}

/// Computes the halfplane/disk geometry for `a` at `beta > 1`.
pub fn lemma_two_geometry(a: PlanarPoint, beta: Beta) -> Result<LemmaTwoGeometry> {
    if a.is_origin() {
        return Err(DepthError::ZeroVector);
    }
    let b = beta.value();
    if b <= 1.0 {
        return Err(DepthError::InvalidBeta(b));
    }
    let k = b / (2.0 * (b - 1.0));
    Ok(LemmaTwoGeometry {
        a,
        beta,
        k,
        p: a.scale((b - 1.0) / b),
        c: a.scale(k),
        r_sq: k * k * a.norm_sq(),
    })
}

impl LemmaTwoGeometry {
    /// `{b : a . b <= |a|^2 / 2k}`.
    pub fn halfplane_query(&self) -> HalfplaneQuery {
        HalfplaneQuery {
            a: self.a,
            s: self.a.norm_sq() / (2.0 * self.k),
        }
    }

    /// `{b : |b - k a|^2 < k^2 |a|^2}`.
    pub fn disk_query(&self) -> DiskQuery {
        DiskQuery {
            center: self.c,
            radius_sq: self.r_sq,
        }
    }
}

/// Decides whether the origin lies in the region of `(a, b)` through the
/// halfplane/disk criterion. Agrees exactly with
/// [`InfluenceRegion::contains`](crate::geometry::InfluenceRegion::contains)
/// at the origin. At `beta = 1` it reduces to `a . b <= 0`.
pub fn origin_in_region_via_lemma(a: PlanarPoint, b: PlanarPoint, beta: Beta) -> Result<bool> {
    if a.is_origin() || b.is_origin() {
        return Err(DepthError::ZeroVector);
    }
    Ok(origin_in_skeleton(
        Shifted::exact(a),
        Shifted::exact(b),
        beta.value(),
    ))
}

/// Partners of one translated point `a`.
struct PartnerRegion {
    a: Shifted,
    beta: f64,
    halfplane: ApproxHalfplane,
    disk: Option<ApproxDisk>,
}

impl PartnerRegion {
    fn new(a: Shifted, beta: f64) -> Self {
        let approx = a.approx();
        if beta == 1.0 {
            return PartnerRegion {
                a,
                beta,
                halfplane: ApproxHalfplane {
                    normal: approx,
                    offset: 0.0,
                },
                disk: None,
            };
        }
        let k = beta / (2.0 * (beta - 1.0));
        let norm_sq = approx.norm_sq();
        PartnerRegion {
            a,
            beta,
            halfplane: ApproxHalfplane {
                normal: approx,
                offset: norm_sq / (2.0 * k),
            },
            disk: Some(ApproxDisk {
                center: approx.scale(k),
                radius_sq: k * k * norm_sq,
            }),
        }
    }
}

impl CountingRegion for PartnerRegion {
    fn classify(&self, bbox: &BBox) -> Coverage {
        let h = self.halfplane.classify(bbox);
        match self.disk {
            None => h,
            Some(d) if h != Coverage::None => minus(h, d.classify(bbox)),
            Some(_) => Coverage::None,
        }
    }

    fn contains(&self, b: Shifted) -> bool {
        if self.disk.is_none() {
            dot_sign(self.a, b) != Ordering::Greater
        } else {
            skeleton_halfplane(self.a, b, self.beta) && skeleton_outside_disk(self.a, b, self.beta)
        }
    }
}

/// Beta-skeleton depth of `q` by per-point range counting.
pub fn beta_depth_fast(q: PlanarPoint, data: &Dataset, beta: Beta) -> Result<DepthResult> {
    beta_depth_fast_with_leaf_size(q, data, beta, DEFAULT_LEAF_SIZE)
}

pub fn beta_depth_fast_with_leaf_size(
    q: PlanarPoint,
    data: &Dataset,
    beta: Beta,
    leaf_size: usize,
) -> Result<DepthResult> {
    data.require_planar()?;
    data.require_at_least(2)?;
    let n = data.len();
    let translated: Vec<Shifted> = data
        .points()
        .map(|p| Shifted::between(PlanarPoint { x: p[0], y: p[1] }, q))
        .filter(|s| !s.is_zero())
        .collect();
    let zeros = n - translated.len();
    let index = CountingIndex::from_shifted(translated.clone(), leaf_size);
    let b = beta.value();
    let mut total = 0u64;
    for &a in &translated {
        let region = PartnerRegion::new(a, b);
        // a never answers its own query: a . a <= (1 - 1/beta)|a|^2 fails for a != 0
        debug_assert!(!region.contains(a));
        total += index.count_region(&region) as u64;
    }
    debug_assert!(total.is_multiple_of(2), "partner total must be even");
    let raw = total / 2 + coincident_pairs(n, zeros);
    Ok(DepthResult::pairwise(raw, n, Method::BetaFast, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::influence_region;
    use crate::point::PointD;

    fn p(x: f64, y: f64) -> PlanarPoint {
        PlanarPoint { x, y }
    }

    #[test]
    fn geometry_examples() {
        let g = lemma_two_geometry(p(2.0, 0.0), Beta::LENS).unwrap();
        assert_eq!((g.k, g.p, g.c, g.r_sq), (1.0, p(1.0, 0.0), p(2.0, 0.0), 4.0));
        assert_eq!(g.halfplane_query(), HalfplaneQuery { a: p(2.0, 0.0), s: 2.0 });

        let g = lemma_two_geometry(p(0.0, 3.0), Beta::new(3.0).unwrap()).unwrap();
        assert_eq!((g.k, g.p, g.c, g.r_sq), (0.75, p(0.0, 2.0), p(0.0, 2.25), 81.0 / 16.0));

        let g = lemma_two_geometry(p(2.0, 0.0), Beta::new(1e6).unwrap()).unwrap();
        assert!((g.k - 0.5).abs() < 1e-6);
        assert!((g.p.x - 2.0).abs() < 1e-5 && (g.c.x - 1.0).abs() < 1e-5 && (g.r_sq - 1.0).abs() < 1e-5);
    }

    #[test]
    fn geometry_errors() {
        assert_eq!(lemma_two_geometry(p(0.0, 0.0), Beta::LENS), Err(DepthError::ZeroVector));
        assert_eq!(lemma_two_geometry(p(1.0, 0.0), Beta::SPHERICAL), Err(DepthError::InvalidBeta(1.0)));
        assert_eq!(
            origin_in_region_via_lemma(p(0.0, 0.0), p(1.0, 0.0), Beta::LENS),
            Err(DepthError::ZeroVector)
        );
    }

    #[test]
    fn criterion_examples_match_direct_membership() {
        for beta in [1.5, 2.0, 7.0] {
            let beta = Beta::new(beta).unwrap();
            assert!(origin_in_region_via_lemma(p(1.0, 0.0), p(-1.0, 0.0), beta).unwrap());
        }
        assert!(!origin_in_region_via_lemma(p(1.0, 0.0), p(1.0, 0.01), Beta::LENS).unwrap());
        let region = influence_region(
            &PointD::from(p(1.0, 0.0)),
            &PointD::from(p(1.0, 0.01)),
            Beta::LENS,
        )
        .unwrap();
        assert!(!region.contains(&PointD::from(PlanarPoint::ORIGIN)).unwrap());
    }

    #[test]
    fn depth_examples() {
        let axes = Dataset::from_planar(&[p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)]).unwrap();
        assert_eq!(beta_depth_fast(PlanarPoint::ORIGIN, &axes, Beta::LENS).unwrap().raw_count, 6);
        assert_eq!(beta_depth_fast(PlanarPoint::ORIGIN, &axes, Beta::SPHERICAL).unwrap().raw_count, 6);
        assert!(beta_depth_fast(PlanarPoint::ORIGIN, &Dataset::from_planar(&[p(1.0, 1.0)]).unwrap(), Beta::LENS).is_err());
    }
}
