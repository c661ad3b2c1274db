//! Beta-skeleton data depth in the plane and beyond.
//!
//! For `beta >= 1` the influence region of two points `x_i, x_j` is the lune
//! `B(c_i, r) ∩ B(c_j, r)` with `c_i = (β/2) x_i + (1 - β/2) x_j`,
//! `c_j = (1 - β/2) x_i + (β/2) x_j` and `r = (β/2)|x_i - x_j|`. The depth of a
//! query is the fraction of the `C(n, 2)` regions that contain it; `β = 1` is
//! spherical depth and `β = 2` lens depth.
//!
//! Engines:
//!
//! * [`beta_depth_brute`]: all pairs, any dimension.
//! * [`spherical_depth_fast`]: `O(n log n)` planar spherical depth by angular sort.
//! * [`beta_depth_fast`]: planar depth for any `β >= 1` via halfplane and
//!   disk range counting over a [`CountingIndex`].
//! * [`simplicial_depth_brute`]: closed-triangle counting for comparison.
//!
//! Every membership test is exact for finite `f64` input (see the `exact`
//! module), so all engines return identical integer counts.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// predicate bodies are generic over Copy and non-Copy scalars
#![allow(clippy::clone_on_copy)]

extern crate alloc;

mod exact;

pub mod beta;
pub mod counting;
pub mod error;
pub mod gadgets;
pub mod geometry;
pub mod point;
pub mod reference;
pub mod spherical;

pub use beta::{beta_depth_fast, lemma_two_geometry, origin_in_region_via_lemma, LemmaTwoGeometry};
pub use counting::{build_counting_index, CountingIndex, DiskQuery, HalfplaneQuery};
pub use error::{DepthError, Result};
pub use gadgets::{
    build_angle_gadget, build_spherical_gadget, decide_uniqueness_lens, decide_uniqueness_spherical,
    GadgetKind, GadgetSpec, UniquenessDecision,
};
pub use geometry::{angle_at_origin_classification, influence_region, AngleClass, Beta, InfluenceRegion};
pub use point::{PlanarPoint, PointD};
pub use reference::{
    beta_depth_brute, pair_count, simplicial_depth_brute, triangle_contains, triple_count, Dataset,
    DepthKind, DepthResult, Method,
};
pub use spherical::{build_index, spherical_depth_fast, AngularEntry, SortedAngularIndex};
