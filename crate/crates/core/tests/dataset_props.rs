//! Distribution and determinism checks for the benchmark front generators.

use hvlc::{gaussian, generate, generate_with_budget, DatasetKind, Error};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn gaussian_moments_match_standard_normal() {
    let mut rng = StdRng::seed_from_u64(42);
    let m = 1_000_000;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..m {
        let x = gaussian(&mut rng);
        sum += x;
        sum_sq += x * x;
    }
    let mean = sum / m as f64;
    let var = sum_sq / m as f64 - mean * mean;
    assert!(mean.abs() <= 0.01, "mean {mean}");
    assert!((var - 1.0).abs() <= 0.02, "variance {var}");
}

#[test]
fn surface_constraints_hold_everywhere() {
    for &d in &[2usize, 3, 10] {
        for seed in 0..3u64 {
            let check = |kind: DatasetKind, constraint: fn(&[f64]) -> f64| {
                let front = generate(kind, 2000, d, seed).unwrap();
                for p in front.points() {
                    let value = constraint(p.coords());
                    assert!(
                        (value - 1.0).abs() <= 1e-9,
                        "{kind:?} d={d} seed={seed}: constraint value {value}"
                    );
                    assert!(p.coords().iter().all(|&x| (0.0..=1.0).contains(&x)));
                }
            };
            check(DatasetKind::Linear, |c| c.iter().sum());
            check(DatasetKind::Spherical, |c| c.iter().map(|x| x * x).sum());
            check(DatasetKind::Concave, |c| c.iter().map(|x| x.sqrt()).sum());
        }
    }
}

#[test]
fn surface_fronts_are_antichains_above_one_dimension() {
    for kind in [
        DatasetKind::Linear,
        DatasetKind::Spherical,
        DatasetKind::Concave,
    ] {
        for &d in &[2usize, 3, 10] {
            let front = generate(kind, 200, d, 11).unwrap();
            assert_eq!(front.find_dominated(), None, "{kind:?} d={d}");
        }
    }
}

#[test]
fn rejection_families_produce_antichains() {
    for kind in [DatasetKind::Random1, DatasetKind::Random2] {
        let front = generate(kind, 50, 5, 4).unwrap();
        assert_eq!(front.len(), 50);
        assert_eq!(front.find_dominated(), None, "{kind:?}");
    }
}

#[test]
fn generation_is_bitwise_deterministic() {
    for kind in [
        DatasetKind::Linear,
        DatasetKind::Spherical,
        DatasetKind::Concave,
        DatasetKind::Random1,
        DatasetKind::Random2,
    ] {
        let a = generate(kind, 30, 4, 123).unwrap();
        let b = generate(kind, 30, 4, 123).unwrap();
        for (pa, pb) in a.points().iter().zip(b.points()) {
            for (x, y) in pa.coords().iter().zip(pb.coords()) {
                assert_eq!(x.to_bits(), y.to_bits(), "{kind:?}");
            }
        }
        // Different seeds genuinely differ.
        let c = generate(kind, 30, 4, 124).unwrap();
        assert_ne!(a, c, "{kind:?}");
    }
}

#[test]
fn rejection_budget_is_enforced() {
    // A one-dimensional antichain of three points is impossible.
    for kind in [DatasetKind::Random1, DatasetKind::Random2] {
        let err = generate_with_budget(kind, 3, 1, 0, 50).unwrap_err();
        assert_eq!(err, Error::ResampleBudgetExhausted { budget: 50 });
    }
}
