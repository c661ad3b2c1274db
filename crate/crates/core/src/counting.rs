//! Static range counting over a planar point set.
//!
//! A kd-style tree with bounding boxes. Whole subtrees are accepted or
//! rejected only when a box is clear of the query boundary by a relative
//! margin far larger than any rounding in the approximate query geometry;
//! everything else descends to the leaves, where each point is tested with
//! the exact predicate. Counts are therefore exact, while pruning only
//! affects speed.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{DepthError, Result};
use crate::exact::{exact_sign, Scalar};
use crate::point::{check_finite, PlanarPoint, Shifted};

pub const DEFAULT_LEAF_SIZE: usize = 16;

// Relative slack used when classifying a whole box against a query.
const PRUNE_TOL: f64 = 1e-9;

/// Closed halfplane `{b : a . b <= s}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfplaneQuery {
    pub a: PlanarPoint,
    pub s: f64,
}

/// Open disk `{b : |b - center|^2 < radius_sq}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskQuery {
    pub center: PlanarPoint,
    pub radius_sq: f64,
}

impl HalfplaneQuery {
    fn validated(self) -> Result<Self> {
        check_finite(self.a.x)?;
        check_finite(self.a.y)?;
        check_finite(self.s)?;
        if self.a.is_origin() {
            return Err(DepthError::ZeroNormal);
        }
        Ok(self)
    }
}

impl DiskQuery {
    fn validated(self) -> Result<Self> {
        check_finite(self.center.x)?;
        check_finite(self.center.y)?;
        check_finite(self.radius_sq)?;
        if self.radius_sq <= 0.0 {
            return Err(DepthError::NonPositiveRadius(self.radius_sq));
        }
        Ok(self)
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min: PlanarPoint,
    pub max: PlanarPoint,
}

impl BBox {
    fn empty() -> Self {
        BBox {
            min: PlanarPoint {
                x: f64::INFINITY,
                y: f64::INFINITY,
            },
            max: PlanarPoint {
                x: f64::NEG_INFINITY,
                y: f64::NEG_INFINITY,
            },
        }
    }

    fn grow(&mut self, p: PlanarPoint) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn contains(&self, p: PlanarPoint) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    fn corners(&self) -> [PlanarPoint; 4] {
        [
            self.min,
            PlanarPoint {
                x: self.max.x,
                y: self.min.y,
            },
            self.max,
            PlanarPoint {
                x: self.min.x,
                y: self.max.y,
            },
        ]
    }

    fn max_abs(&self) -> PlanarPoint {
        PlanarPoint {
            x: self.min.x.abs().max(self.max.x.abs()),
            y: self.min.y.abs().max(self.max.y.abs()),
        }
    }
}

/// Outcome of testing a whole box against a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coverage {
    All,
    None,
    Partial,
}

/// A region the index can count: a conservative box test plus an exact
/// point test.
pub(crate) trait CountingRegion {
    fn classify(&self, bbox: &BBox) -> Coverage;
    fn contains(&self, p: Shifted) -> bool;
}

/// Approximate closed halfplane `n . b <= s` for box pruning.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ApproxHalfplane {
    pub normal: PlanarPoint,
    pub offset: f64,
}

impl ApproxHalfplane {
    pub(crate) fn classify(&self, bbox: &BBox) -> Coverage {
        let m = bbox.max_abs();
        let scale = self.normal.x.abs() * m.x + self.normal.y.abs() * m.y + self.offset.abs();
        let tol = PRUNE_TOL * scale + f64::MIN_POSITIVE;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in bbox.corners() {
            let v = self.normal.dot(c) - self.offset;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !(lo.is_finite() && hi.is_finite() && tol.is_finite()) {
            Coverage::Partial
        } else if hi < -tol {
            Coverage::All
        } else if lo > tol {
            Coverage::None
        } else {
            Coverage::Partial
        }
    }
}

/// Approximate open disk for box pruning; `All` means the box lies inside it.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ApproxDisk {
    pub center: PlanarPoint,
    pub radius_sq: f64,
}

impl ApproxDisk {
    pub(crate) fn classify(&self, bbox: &BBox) -> Coverage {
        let c = self.center;
        let nx = c.x.clamp(bbox.min.x, bbox.max.x) - c.x;
        let ny = c.y.clamp(bbox.min.y, bbox.max.y) - c.y;
        let near = nx * nx + ny * ny;
        let fx = (bbox.min.x - c.x).abs().max((bbox.max.x - c.x).abs());
        let fy = (bbox.min.y - c.y).abs().max((bbox.max.y - c.y).abs());
        let far = fx * fx + fy * fy;
        let m = bbox.max_abs();
        let ex = c.x.abs() + m.x;
        let ey = c.y.abs() + m.y;
        let tol = PRUNE_TOL * (self.radius_sq + ex * ex + ey * ey) + f64::MIN_POSITIVE;
        if !(far.is_finite() && tol.is_finite()) {
            Coverage::Partial
        } else if far < self.radius_sq - tol {
            Coverage::All
        } else if near > self.radius_sq + tol {
            Coverage::None
        } else {
            Coverage::Partial
        }
    }
}

/// Combines a halfplane coverage with an open-disk coverage into the
/// coverage of "halfplane minus disk".
pub(crate) fn minus(halfplane: Coverage, disk: Coverage) -> Coverage {
    match (halfplane, disk) {
        (Coverage::None, _) | (_, Coverage::All) => Coverage::None,
        (Coverage::All, Coverage::None) => Coverage::All,
        _ => Coverage::Partial,
    }
}

struct PublicHalfplane(HalfplaneQuery);

impl PublicHalfplane {
    fn approx(&self) -> ApproxHalfplane {
        ApproxHalfplane {
            normal: self.0.a,
            offset: self.0.s,
        }
    }

    fn holds(&self, b: Shifted) -> bool {
        let h = self.0;
        exact_sign!(|S| {
            S::from_f64(h.s) - (S::from_f64(h.a.x) * b.x.lift::<S>() + S::from_f64(h.a.y) * b.y.lift::<S>())
        }) != Ordering::Less
    }
}

impl CountingRegion for PublicHalfplane {
    fn classify(&self, bbox: &BBox) -> Coverage {
        self.approx().classify(bbox)
    }

    fn contains(&self, p: Shifted) -> bool {
        self.holds(p)
    }
}

struct PublicDisk(DiskQuery);

impl PublicDisk {
    fn approx(&self) -> ApproxDisk {
        ApproxDisk {
            center: self.0.center,
            radius_sq: self.0.radius_sq,
        }
    }

    fn strictly_inside(&self, b: Shifted) -> bool {
        let d = self.0;
        exact_sign!(|S| {
            let dx = b.x.lift::<S>() - S::from_f64(d.center.x);
            let dy = b.y.lift::<S>() - S::from_f64(d.center.y);
            dx.clone() * dx + dy.clone() * dy - S::from_f64(d.radius_sq)
        }) == Ordering::Less
    }
}

struct HalfplaneMinusDisk(PublicHalfplane, PublicDisk);

impl CountingRegion for HalfplaneMinusDisk {
    fn classify(&self, bbox: &BBox) -> Coverage {
        minus(self.0.approx().classify(bbox), self.1.approx().classify(bbox))
    }

    fn contains(&self, p: Shifted) -> bool {
        self.0.holds(p) && !self.1.strictly_inside(p)
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    bbox: BBox,
    start: u32,
    end: u32,
    // index of the first child; the second child follows it. 0 for leaves.
    children: u32,
}

/// Immutable counting tree over a fixed planar point set.
#[derive(Clone, Debug)]
pub struct CountingIndex {
    nodes: Vec<Node>,
    points: Vec<Shifted>,
    leaf_size: usize,
}

/// Builds the index with the default leaf size.
pub fn build_counting_index(points: &[PlanarPoint]) -> Result<CountingIndex> {
    CountingIndex::with_leaf_size(points, DEFAULT_LEAF_SIZE)
}

impl CountingIndex {
    pub fn with_leaf_size(points: &[PlanarPoint], leaf_size: usize) -> Result<Self> {
        for p in points {
            check_finite(p.x)?;
            check_finite(p.y)?;
        }
        Ok(Self::from_shifted(
            points.iter().map(|&p| Shifted::exact(p)).collect(),
            leaf_size,
        ))
    }

    pub(crate) fn from_shifted(points: Vec<Shifted>, leaf_size: usize) -> Self {
        let leaf_size = leaf_size.max(1);
        let mut index = CountingIndex {
            nodes: Vec::with_capacity(2 * points.len() / leaf_size + 1),
            points,
            leaf_size,
        };
        let len = index.points.len();
        index.nodes.push(Node {
            bbox: BBox::empty(),
            start: 0,
            end: len as u32,
            children: 0,
        });
        index.split(0);
        index
    }

    fn split(&mut self, node: usize) {
        let (start, end) = (self.nodes[node].start as usize, self.nodes[node].end as usize);
        let mut bbox = BBox::empty();
        for p in &self.points[start..end] {
            bbox.grow(PlanarPoint {
                x: p.x.hi,
                y: p.y.hi,
            });
        }
        self.nodes[node].bbox = bbox;
        if end - start <= self.leaf_size {
            return;
        }
        let along_x = bbox.max.x - bbox.min.x >= bbox.max.y - bbox.min.y;
        let mid = (end - start) / 2;
        self.points[start..end].select_nth_unstable_by(mid, |a, b| {
            if along_x {
                a.x.hi.total_cmp(&b.x.hi)
            } else {
                a.y.hi.total_cmp(&b.y.hi)
            }
        });
        let first = self.nodes.len();
        self.nodes[node].children = first as u32;
        let split_at = (start + mid) as u32;
        self.nodes.push(Node {
            bbox: BBox::empty(),
            start: start as u32,
            end: split_at,
            children: 0,
        });
        self.nodes.push(Node {
            bbox: BBox::empty(),
            start: split_at,
            end: end as u32,
            children: 0,
        });
        self.split(first);
        self.split(first + 1);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn leaf_size(&self) -> usize {
        self.leaf_size
    }

    /// Bounding box of the whole set, `None` when empty.
    pub fn bbox(&self) -> Option<BBox> {
        (!self.points.is_empty()).then(|| self.nodes[0].bbox)
    }

    /// Point counts of the leaves, in tree order.
    pub fn leaf_counts(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.children == 0)
            .map(|n| (n.end - n.start) as usize)
            .collect()
    }

    /// Checks the structural invariants: leaves partition the points and
    /// every box covers its subtree.
    pub fn check_invariants(&self) -> bool {
        let leaf_total: usize = self.leaf_counts().iter().sum();
        leaf_total == self.points.len()
            && self.nodes.iter().all(|n| {
                self.points[n.start as usize..n.end as usize].iter().all(|p| {
                    n.bbox.contains(PlanarPoint {
                        x: p.x.hi,
                        y: p.y.hi,
                    })
                })
            })
    }

    pub(crate) fn count_region<R: CountingRegion>(&self, region: &R) -> usize {
        if self.points.is_empty() {
            return 0;
        }
        let mut total = 0;
        let mut stack = Vec::with_capacity(64);
        stack.push(0usize);
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            match region.classify(&node.bbox) {
                Coverage::All => total += (node.end - node.start) as usize,
                Coverage::None => {}
                Coverage::Partial if node.children == 0 => {
                    total += self.points[node.start as usize..node.end as usize]
                        .iter()
                        .filter(|&&p| region.contains(p))
                        .count();
                }
                Coverage::Partial => {
                    stack.push(node.children as usize + 1);
                    stack.push(node.children as usize);
                }
            }
        }
        total
    }

    pub(crate) fn count_region_linear<R: CountingRegion>(&self, region: &R) -> usize {
        self.points.iter().filter(|&&p| region.contains(p)).count()
    }

    /// Exact number of points `b` with `a . b <= s`.
    pub fn count_halfplane(&self, h: HalfplaneQuery) -> Result<usize> {
        Ok(self.count_region(&PublicHalfplane(h.validated()?)))
    }

    /// Exact number of points `b` with `a . b <= s` and `|b - c|^2 >= r^2`.
    pub fn count_halfplane_minus_open_disk(&self, h: HalfplaneQuery, d: DiskQuery) -> Result<usize> {
        Ok(self.count_region(&HalfplaneMinusDisk(
            PublicHalfplane(h.validated()?),
            PublicDisk(d.validated()?),
        )))
    }

    /// Linear-scan reference for [`count_halfplane`](Self::count_halfplane).
    pub fn count_halfplane_linear(&self, h: HalfplaneQuery) -> Result<usize> {
        Ok(self.count_region_linear(&PublicHalfplane(h.validated()?)))
    }

    /// Linear-scan reference for
    /// [`count_halfplane_minus_open_disk`](Self::count_halfplane_minus_open_disk).
    pub fn count_halfplane_minus_open_disk_linear(
        &self,
        h: HalfplaneQuery,
        d: DiskQuery,
    ) -> Result<usize> {
        Ok(self.count_region_linear(&HalfplaneMinusDisk(
            PublicHalfplane(h.validated()?),
            PublicDisk(d.validated()?),
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(x: f64, y: f64) -> PlanarPoint {
        PlanarPoint { x, y }
    }

    #[test]
    fn empty_and_singleton() {
        let empty = build_counting_index(&[]).unwrap();
        assert_eq!(empty.len(), 0);
        assert_eq!(empty.count_halfplane(HalfplaneQuery { a: p(1.0, 0.0), s: 5.0 }), Ok(0));
        let one = build_counting_index(&[p(0.0, 0.0)]).unwrap();
        assert_eq!(one.leaf_counts(), vec![1]);
        assert_eq!(one.count_halfplane(HalfplaneQuery { a: p(0.3, -2.0), s: 0.0 }), Ok(1));
    }

    #[test]
    fn halfplane_examples() {
        let idx = build_counting_index(&[p(1.0, 0.0), p(-1.0, 0.0)]).unwrap();
        assert_eq!(idx.count_halfplane(HalfplaneQuery { a: p(1.0, 0.0), s: 0.0 }), Ok(1));
        assert_eq!(
            idx.count_halfplane(HalfplaneQuery { a: p(0.0, 0.0), s: 0.0 }),
            Err(DepthError::ZeroNormal)
        );
    }

    #[test]
    fn halfplane_minus_disk_examples() {
        let h = HalfplaneQuery { a: p(2.0, 0.0), s: 2.0 };
        let d = DiskQuery { center: p(2.0, 0.0), radius_sq: 4.0 };
        let fails = build_counting_index(&[p(2.0, 0.0)]).unwrap();
        assert_eq!(fails.count_halfplane_minus_open_disk(h, d), Ok(0));
        let kept = build_counting_index(&[p(-3.0, 0.0)]).unwrap();
        assert_eq!(kept.count_halfplane_minus_open_disk(h, d), Ok(1));
        assert_eq!(
            kept.count_halfplane_minus_open_disk(h, DiskQuery { center: p(0.0, 0.0), radius_sq: 0.0 }),
            Err(DepthError::NonPositiveRadius(0.0))
        );
        // boundary of the disk is kept, boundary of the halfplane is kept
        let edge = build_counting_index(&[p(0.0, 0.0), p(1.0, 0.0)]).unwrap();
        assert_eq!(edge.count_halfplane_minus_open_disk(h, d), Ok(1));
    }

    #[test]
    fn tree_shape() {
        let pts: Vec<PlanarPoint> = (0..1000).map(|i| p((i * 37 % 101) as f64, (i * 11 % 53) as f64)).collect();
        let idx = CountingIndex::with_leaf_size(&pts, 8).unwrap();
        assert!(idx.check_invariants());
        assert!(idx.leaf_counts().iter().all(|&c| c <= 8));
        assert_eq!(idx.bbox(), Some(BBox { min: p(0.0, 0.0), max: p(100.0, 52.0) }));
    }
}
