//! Uniqueness gadgets against direct duplicate detection.

mod common;

use common::*;
use rand::prelude::*;
use skdepth_core::gadgets::{separation_angle, GadgetKind, GadgetSpec};
use skdepth_core::{
    beta_depth_brute, build_angle_gadget, decide_uniqueness_lens, decide_uniqueness_spherical, Beta,
};

fn has_duplicates(values: &[f64]) -> bool {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.windows(2).any(|w| w[0] == w[1])
}

fn equal_pairs(values: &[f64]) -> u64 {
    let mut c = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            c += (values[i] == values[j]) as u64;
        }
    }
    c
}

fn random_values(rng: &mut impl Rng) -> Vec<f64> {
    let n = rng.gen_range(2..=25);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=400) as f64 * 0.5).collect();
    if rng.gen_bool(0.5) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        v[i] = v[j];
    }
    v
}

#[test]
fn decisions_agree_with_sorting() {
    let mut rng = rng(21);
    for _ in 0..1000 {
        let values = random_values(&mut rng);
        let dup = has_duplicates(&values);
        let sph = decide_uniqueness_spherical(&values).unwrap();
        let lens = decide_uniqueness_lens(&values).unwrap();
        assert_eq!(sph.unique, !dup, "{values:?}");
        assert_eq!(lens.unique, !dup, "{values:?}");
        assert_eq!(lens.duplicate_pairs, Some(equal_pairs(&values)), "{values:?}");
    }
}

#[test]
fn each_point_pairs_only_with_its_rotated_copy() {
    let mut rng = rng(22);
    for _ in 0..30 {
        let n = rng.gen_range(2..=15);
        let mut values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..100.0)).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let n = values.len();
        let spec = GadgetSpec::new(&values, GadgetKind::Lens).unwrap();
        let pts = spec.build().unwrap().planar_points().unwrap();
        for j in 0..2 * n {
            let partners: Vec<usize> = (0..2 * n)
                .filter(|&k| k != j)
                .filter(|&k| {
                    skdepth_core::influence_region(&pts[j].into(), &pts[k].into(), Beta::LENS)
                        .unwrap()
                        .contains(&skdepth_core::PlanarPoint::ORIGIN.into())
                        .unwrap()
                })
                .collect();
            assert_eq!(partners, vec![(n + j) % (2 * n)]);
        }
    }
}

#[test]
fn general_beta_gadget_counts_n_for_distinct_values() {
    let mut rng = rng(23);
    for beta in [1.5, 2.0, 3.0, 5.0] {
        let beta = Beta::new(beta).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(2..=12);
            let mut values: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=1000) as f64 / 7.0).collect();
            values.sort_by(f64::total_cmp);
            values.dedup();
            let data = build_angle_gadget(&values, separation_angle(beta).unwrap()).unwrap();
            let r = beta_depth_brute(&[0.0, 0.0], &data, beta).unwrap();
            assert_eq!(r.raw_count, values.len() as u64);
            let d = GadgetSpec::new(&values, GadgetKind::GeneralBeta(beta)).unwrap().decide().unwrap();
            assert!(d.unique);
        }
    }
}

#[test]
fn unnudged_angle_sits_on_the_boundary() {
    // Exactly at the critical angle the equal-value pairs are boundary cases and
    // the rounded cos/sin decide the outcome; the gadget's margin removes that.
    let beta = Beta::new(3.0).unwrap();
    let values = [1.37, 2.74, 4.11];
    let at_critical = build_angle_gadget(&values, skdepth_core::gadgets::critical_angle(beta)).unwrap();
    assert_ne!(beta_depth_brute(&[0.0, 0.0], &at_critical, beta).unwrap().raw_count, 3);
    let nudged = build_angle_gadget(&values, separation_angle(beta).unwrap()).unwrap();
    assert_eq!(beta_depth_brute(&[0.0, 0.0], &nudged, beta).unwrap().raw_count, 3);
}
