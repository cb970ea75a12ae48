//! Sampling-based soundness checks for contribution bounding boxes and
//! influencer lists.

use hvlc::{DatasetKind, Front};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn covers(b: &[f64], p: &[f64]) -> bool {
    b.iter().zip(p).all(|(bk, pk)| pk <= bk)
}

fn test_fronts() -> Vec<Front> {
    let mut fronts = vec![
        Front::from_rows(vec![vec![3.0, 1.0], vec![2.0, 2.0], vec![1.0, 3.0]]).unwrap(),
        Front::from_rows(vec![
            vec![3.0, 1.0, 1.0],
            vec![1.0, 3.0, 1.0],
            vec![1.0, 1.0, 3.0],
            vec![2.0, 2.0, 2.0],
        ])
        .unwrap(),
    ];
    for seed in 0..4 {
        fronts
            .push(hvlc::generate(DatasetKind::Random1, 8, 2 + (seed as usize % 3), seed).unwrap());
    }
    fronts
}

#[test]
fn bounding_boxes_contain_every_uniquely_dominated_sample() {
    let fronts = test_fronts();
    let combos: usize = fronts.iter().map(|f| f.len()).sum();
    let samples_per_box = 1_000_000 / combos;
    let mut rng = StdRng::seed_from_u64(71);
    let mut covered_any = 0u64;
    for front in &fronts {
        let d = front.dim();
        for idx in 0..front.len() {
            let a = front.point(idx).coords();
            let bb = front.contribution_box(idx).unwrap();
            for _ in 0..samples_per_box {
                // Uniform in the whole box of A, not just the bounding box.
                let p: Vec<f64> = (0..d).map(|k| rng.gen::<f64>() * a[k]).collect();
                let unique = (0..front.len())
                    .filter(|&j| j != idx)
                    .all(|j| !covers(front.point(j).coords(), &p));
                if unique {
                    covered_any += 1;
                    assert!(
                        p.iter()
                            .zip(&bb.lower)
                            .zip(&bb.upper)
                            .all(|((x, lo), hi)| lo <= x && x <= hi),
                        "uniquely dominated sample {p:?} escapes the bounding box of {idx}"
                    );
                }
            }
        }
    }
    assert!(covered_any > 0);
}

#[test]
fn influencer_lists_are_complete_inside_the_bounding_box() {
    let fronts = test_fronts();
    let mut rng = StdRng::seed_from_u64(72);
    for front in &fronts {
        let d = front.dim();
        for idx in 0..front.len() {
            let bb = front.contribution_box(idx).unwrap();
            if bb.volume() == 0.0 {
                continue;
            }
            let influencers = front.influencers(idx, &bb).unwrap();
            for _ in 0..5_000 {
                let p: Vec<f64> = (0..d)
                    .map(|k| bb.lower[k] + rng.gen::<f64>() * (bb.upper[k] - bb.lower[k]))
                    .collect();
                let by_all = (0..front.len())
                    .filter(|&j| j != idx)
                    .any(|j| covers(front.point(j).coords(), &p));
                let by_influencers = influencers
                    .iter()
                    .any(|&j| covers(front.point(j).coords(), &p));
                assert_eq!(by_all, by_influencers, "box {idx}, point {p:?}");
            }
        }
    }
}

#[test]
fn bounding_box_volume_zero_iff_weakly_dominated() {
    let mut rng = StdRng::seed_from_u64(73);
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let d = rng.gen_range(2..=4);
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 && rng.gen_bool(0.25) {
                rows.push(rows[rng.gen_range(0..i)].clone());
            } else {
                rows.push((0..d).map(|_| rng.gen_range(0.1..1.0)).collect());
            }
        }
        let front = Front::from_rows(rows).unwrap();
        for idx in 0..n {
            let volume = front.contribution_box(idx).unwrap().volume();
            let dominated = (0..n)
                .filter(|&j| j != idx)
                .any(|j| front.point(j).dominates(front.point(idx)).unwrap());
            assert_eq!(volume == 0.0, dominated, "box {idx}");
        }
    }
}

#[test]
fn scaling_one_dimension_scales_volumes_and_keeps_orderings() {
    let mut rng = StdRng::seed_from_u64(74);
    for &c in &[4.0f64, 10.0] {
        for _ in 0..50 {
            let n = rng.gen_range(2..=10);
            let d = rng.gen_range(2..=4);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..d).map(|_| rng.gen_range(0.1..1.0)).collect())
                .collect();
            let scaled: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    let mut s = r.clone();
                    s[0] *= c;
                    s
                })
                .collect();
            let f = Front::from_rows(rows).unwrap();
            let g = Front::from_rows(scaled).unwrap();
            for idx in 0..n {
                let bf = f.contribution_box(idx).unwrap();
                let bg = g.contribution_box(idx).unwrap();
                let (vf, vg) = (bf.volume(), bg.volume());
                if c == 4.0 {
                    // Binary scaling is exact in floating point.
                    assert_eq!(vg, c * vf);
                } else {
                    assert!((vg - c * vf).abs() <= 1e-12 * (c * vf).max(1e-300));
                }
                assert_eq!(
                    f.influencers(idx, &bf).unwrap(),
                    g.influencers(idx, &bg).unwrap()
                );
            }
        }
    }
}
