//! Relations between spherical, lens, and simplicial depth.

mod common;

use common::*;
use rand::prelude::*;
use skdepth_core::{
    beta_depth_brute, beta_depth_fast, influence_region, pair_count, simplicial_depth_brute,
    spherical_depth_fast, triangle_contains, triple_count, Beta, PlanarPoint,
};

#[test]
fn lens_depth_dominates_spherical_depth() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let n = rng.gen_range(2..=60);
        let pts = if rng.gen_bool(0.5) { uniform_points(&mut rng, n, 10.0) } else { grid_points(&mut rng, n, 4) };
        let q = uniform_point(&mut rng, 10.0);
        let s = dataset(&pts);
        let sph = beta_depth_brute(&[q.x, q.y], &s, Beta::SPHERICAL).unwrap().raw_count;
        let lens = beta_depth_brute(&[q.x, q.y], &s, Beta::LENS).unwrap().raw_count;
        assert!(lens >= sph);
    }
}

#[test]
fn two_of_three_diametral_disks_cover_a_triangle_point() {
    let mut rng = rng(32);
    let mut checked = 0;
    while checked < 2000 {
        let [a, b, c] = [0, 1, 2].map(|_| uniform_point(&mut rng, 10.0));
        let w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        let sum: f64 = w.iter().sum();
        let q = PlanarPoint {
            x: (w[0] * a.x + w[1] * b.x + w[2] * c.x) / sum,
            y: (w[0] * a.y + w[1] * b.y + w[2] * c.y) / sum,
        };
        if !triangle_contains(a, b, c, q) {
            continue;
        }
        checked += 1;
        let inside = [(a, b), (a, c), (b, c)]
            .iter()
            .filter(|(u, v)| {
                influence_region(&(*u).into(), &(*v).into(), Beta::SPHERICAL)
                    .unwrap()
                    .contains(&q.into())
                    .unwrap()
            })
            .count();
        assert!(inside >= 2);
    }
}

#[test]
fn spherical_depth_bounds_simplicial_depth() {
    let mut rng = rng(33);
    for round in 0..60 {
        let n = rng.gen_range(3..=30);
        let pts = if round % 3 == 0 { grid_points(&mut rng, n, 3) } else { uniform_points(&mut rng, n, 10.0) };
        let q = uniform_point(&mut rng, 6.0);
        let s = dataset(&pts);
        let sd = simplicial_depth_brute(q, &s).unwrap().raw_count;
        let sph = spherical_depth_fast(q, &s).unwrap().raw_count;
        // containing regions per containing triangle >= 2 / (n - 2)
        assert!((n as u64 - 2) * sph >= 2 * sd, "n={n} sph={sph} sd={sd}");
        // normalized: SphD >= (2/3) SD, cross-multiplied
        assert!(3 * sph * triple_count(n) >= 2 * sd * pair_count(n));
        let lens = beta_depth_fast(q, &s, Beta::LENS).unwrap().raw_count;
        assert!(lens >= sph);
    }
}
