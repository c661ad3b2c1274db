//! Tree counts against linear scans.

mod common;

use common::*;
use rand::prelude::*;
use skdepth_core::counting::CountingIndex;
use skdepth_core::{build_counting_index, DiskQuery, HalfplaneQuery, PlanarPoint};

fn random_halfplane(rng: &mut impl Rng) -> HalfplaneQuery {
    loop {
        let a = uniform_point(rng, 1.0);
        if !a.is_origin() {
            return HalfplaneQuery { a, s: rng.gen_range(-10.0..10.0) };
        }
    }
}

fn random_disk(rng: &mut impl Rng) -> DiskQuery {
    DiskQuery { center: uniform_point(rng, 15.0), radius_sq: rng.gen_range(0.01..200.0) }
}

#[test]
fn random_queries_match_linear_scan() {
    let mut rng = rng(11);
    for set in 0..10 {
        let pts = if set % 2 == 0 { uniform_points(&mut rng, 1000, 10.0) } else { grid_points(&mut rng, 1000, 8) };
        let idx = build_counting_index(&pts).unwrap();
        assert!(idx.check_invariants());
        for _ in 0..300 {
            let h = random_halfplane(&mut rng);
            let d = random_disk(&mut rng);
            let both = idx.count_halfplane_minus_open_disk(h, d).unwrap();
            let half = idx.count_halfplane(h).unwrap();
            assert_eq!(half, idx.count_halfplane_linear(h).unwrap());
            assert_eq!(both, idx.count_halfplane_minus_open_disk_linear(h, d).unwrap());
            assert!(half >= both);
        }
    }
}

#[test]
fn boundary_heavy_queries_on_a_grid() {
    // integer normals, offsets and disks through lattice points put many points on boundaries
    let pts: Vec<PlanarPoint> = (-10..=10)
        .flat_map(|x| (-10..=10).map(move |y| PlanarPoint { x: x as f64, y: y as f64 }))
        .collect();
    let idx = CountingIndex::with_leaf_size(&pts, 4).unwrap();
    let mut rng = rng(12);
    for _ in 0..500 {
        let a = PlanarPoint { x: rng.gen_range(-3..=3) as f64, y: rng.gen_range(1..=3) as f64 };
        let h = HalfplaneQuery { a, s: rng.gen_range(-20..=20) as f64 };
        let c = PlanarPoint { x: rng.gen_range(-10..=10) as f64, y: rng.gen_range(-10..=10) as f64 };
        let d = DiskQuery { center: c, radius_sq: rng.gen_range(1..=50) as f64 };
        assert_eq!(idx.count_halfplane(h).unwrap(), idx.count_halfplane_linear(h).unwrap());
        assert_eq!(
            idx.count_halfplane_minus_open_disk(h, d).unwrap(),
            idx.count_halfplane_minus_open_disk_linear(h, d).unwrap()
        );
    }
}

#[test]
fn large_index_structure() {
    let mut rng = rng(13);
    let pts = uniform_points(&mut rng, 10_000, 10.0);
    let idx = build_counting_index(&pts).unwrap();
    assert_eq!(idx.len(), 10_000);
    assert!(idx.check_invariants());
    assert!(idx.leaf_counts().iter().all(|&c| (1..=16).contains(&c)));
    // deterministic for a fixed input order
    let again = build_counting_index(&pts).unwrap();
    assert_eq!(idx.leaf_counts(), again.leaf_counts());
}
