#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use skdepth_core::{Dataset, PlanarPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_point(rng: &mut impl Rng, half_width: f64) -> PlanarPoint {
    PlanarPoint {
        x: rng.gen_range(-half_width..=half_width),
        y: rng.gen_range(-half_width..=half_width),
    }
}

pub fn uniform_points(rng: &mut impl Rng, n: usize, half_width: f64) -> Vec<PlanarPoint> {
    (0..n).map(|_| uniform_point(rng, half_width)).collect()
}

/// Small integer coordinates; produces many exact right angles, collinear
/// triples, and repeated points.
pub fn grid_points(rng: &mut impl Rng, n: usize, half_width: i32) -> Vec<PlanarPoint> {
    (0..n)
        .map(|_| PlanarPoint {
            x: rng.gen_range(-half_width..=half_width) as f64,
            y: rng.gen_range(-half_width..=half_width) as f64,
        })
        .collect()
}

pub fn plant_duplicates(rng: &mut impl Rng, pts: &mut [PlanarPoint], copies: usize) {
    for _ in 0..copies {
        let from = rng.gen_range(0..pts.len());
        let to = rng.gen_range(0..pts.len());
        pts[to] = pts[from];
    }
}

pub fn dataset(pts: &[PlanarPoint]) -> Dataset {
    Dataset::from_planar(pts).unwrap()
}
