//! Planar spherical depth in `O(n log n)`.
//!
//! The data is translated so the query sits at the origin and sorted by polar
//! angle. A pair `(u, v)` of translated points has the origin in its diametral
//! disk exactly when `u . v <= 0`, i.e. when `v` lies in the closed half-turn
//! arc `[θ(u) + π/2, θ(u) + 3π/2]`. That arc is a contiguous circular range of
//! the sorted order, found with two binary searches. Angles are never
//! computed for comparisons: the order is decided by half-plane membership and
//! exact cross-product signs.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{DepthError, Result};
use crate::geometry::{cross_sign, Beta};
use crate::point::{PlanarPoint, Shifted};
use crate::reference::{pair_count, Dataset, DepthResult, Method};

/// One translated data point in angular order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularEntry {
    /// Polar angle in `[0, 2π)`; informational only.
    pub theta: f64,
    pub original_index: usize,
    /// `x_i - q`, rounded to `f64`.
    pub vector: PlanarPoint,
    exact: Shifted,
}

/// The nonzero translated points sorted counter-clockwise from the positive
/// x axis, with points coincident with the query held out.
#[derive(Clone, Debug)]
pub struct SortedAngularIndex {
    entries: Vec<AngularEntry>,
    zero_count: usize,
}

impl SortedAngularIndex {
    pub fn entries(&self) -> &[AngularEntry] {
        &self.entries
    }

    /// Number of data points equal to the query.
    pub fn zero_count(&self) -> usize {
        self.zero_count
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// 0 for angles in [0, π), 1 for [π, 2π). Exact, since the rounded part of a
// translated coordinate carries its sign.
#[inline]
fn half(v: Shifted) -> u8 {
    if v.y.hi > 0.0 || (v.y.hi == 0.0 && v.x.hi > 0.0) {
        0
    } else {
        1
    }
}

/// Total order on nonzero vectors by polar angle.
#[inline]
fn angle_cmp(u: Shifted, v: Shifted) -> Ordering {
    half(u)
        .cmp(&half(v))
        .then_with(|| cross_sign(u, v).reverse())
}

/// Translates the data by `-q` and sorts it by angle.
pub fn build_index(q: PlanarPoint, data: &Dataset) -> Result<SortedAngularIndex> {
    data.require_planar()?;
    data.require_at_least(2)?;
    let mut zero_count = 0;
    let mut entries = Vec::with_capacity(data.len());
    for (i, p) in data.points().enumerate() {
        let exact = Shifted::between(PlanarPoint { x: p[0], y: p[1] }, q);
        if exact.is_zero() {
            zero_count += 1;
            continue;
        }
        let vector = exact.approx();
        let mut theta = libm::atan2(vector.y, vector.x);
        if theta < 0.0 {
            theta += 2.0 * core::f64::consts::PI;
        }
        entries.push(AngularEntry {
            theta,
            original_index: i,
            vector,
            exact,
        });
    }
    entries.sort_unstable_by(|a, b| {
        angle_cmp(a.exact, b.exact).then(a.original_index.cmp(&b.original_index))
    });
    Ok(SortedAngularIndex {
        entries,
        zero_count,
    })
}

impl SortedAngularIndex {
    /// Number of entries `j` with `v_i . v_j <= 0`, the entries in the closed
    /// arc opposite entry `i`.
    pub fn opposition_count(&self, position: usize) -> Result<usize> {
        let len = self.entries.len();
        let u = self
            .entries
            .get(position)
            .ok_or(DepthError::PositionOutOfRange { position, len })?
            .exact;
        Ok(self.arc_count(u))
    }

    fn arc_count(&self, u: Shifted) -> usize {
        let start = u.perp();
        let end = start.neg();
        let before_start = self
            .entries
            .partition_point(|e| angle_cmp(e.exact, start) == Ordering::Less);
        let through_end = self
            .entries
            .partition_point(|e| angle_cmp(e.exact, end) != Ordering::Greater);
        if half(start) == 0 {
            through_end - before_start
        } else {
            // the arc wraps past angle 0
            self.entries.len() - before_start + through_end
        }
    }

    /// Sum of all opposition counts; each containing pair is counted twice.
    pub fn opposition_total(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| self.arc_count(e.exact) as u64)
            .sum()
    }
}

/// Pairs involving a point equal to the query always contain it.
pub(crate) fn coincident_pairs(n: usize, zeros: usize) -> u64 {
    (zeros * (n - zeros)) as u64 + pair_count(zeros)
}

/// Spherical depth of `q` in `O(n log n)`.
pub fn spherical_depth_fast(q: PlanarPoint, data: &Dataset) -> Result<DepthResult> {
    let index = build_index(q, data)?;
    let total = index.opposition_total();
    debug_assert!(total.is_multiple_of(2), "opposition total must be even");
    let raw = total / 2 + coincident_pairs(data.len(), index.zero_count);
    Ok(DepthResult::pairwise(
        raw,
        data.len(),
        Method::SphericalFast,
        Beta::SPHERICAL,
    ))
}
