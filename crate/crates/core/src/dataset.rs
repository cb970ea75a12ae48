//! Scalable random benchmark fronts.
//!
//! Three surface families (linear, spherical, concave) place points on a
//! normalized surface in `[0,1]^d`; two rejection families draw free points
//! and redraw dominated ones until the set is an antichain. All generation is
//! a pure function of `(kind, n, d, seed)`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::geometry::{find_dominated_by, Front};

/// Benchmark front families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    /// Points with `sum x_i = 1`.
    Linear,
    /// Points with `sum x_i^2 = 1`.
    Spherical,
    /// Points with `sum sqrt(x_i) = 1`.
    Concave,
    /// Uniform points in `[0,1]^d`, redrawn until mutually non-dominated.
    Random1,
    /// Points with coordinates `|N(1,1)|`, redrawn until mutually non-dominated.
    Random2,
}

impl DatasetKind {
    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::Linear => "linear",
            DatasetKind::Spherical => "spherical",
            DatasetKind::Concave => "concave",
            DatasetKind::Random1 => "random1",
            DatasetKind::Random2 => "random2",
        }
    }
}

/// One standard normal variate via the polar rejection method: draw `(u, v)`
/// uniform in `[-1,1]^2`, accept when `0 < s = u^2 + v^2 < 1`, and return
/// `u * sqrt(-2 ln(s) / s)`.
pub fn gaussian(rng: &mut StdRng) -> f64 {
    loop {
        let u = 2.0 * rng.gen::<f64>() - 1.0;
        let v = 2.0 * rng.gen::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

/// Default redraw budget for the rejection families: the antichain fix-up is
/// very expensive for many points in few dimensions.
pub fn default_budget(n: usize) -> u64 {
    1_000_000u64.saturating_mul(n as u64)
}

/// Generates a benchmark front with the default redraw budget.
pub fn generate(kind: DatasetKind, n: usize, d: usize, seed: u64) -> Result<Front> {
    generate_with_budget(kind, n, d, seed, default_budget(n))
}

/// Generates a benchmark front, failing with a resource error once the
/// rejection families have spent `budget` point redraws.
pub fn generate_with_budget(
    kind: DatasetKind,
    n: usize,
    d: usize,
    seed: u64,
    budget: u64,
) -> Result<Front> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidDatasetShape { n, d });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let rows = match kind {
        DatasetKind::Linear | DatasetKind::Spherical | DatasetKind::Concave => {
            (0..n).map(|_| surface_point(kind, d, &mut rng)).collect()
        }
        DatasetKind::Random1 | DatasetKind::Random2 => {
            antichain_points(kind, n, d, &mut rng, budget)?
        }
    };
    Front::from_rows(rows)
}

fn surface_point(kind: DatasetKind, d: usize, rng: &mut StdRng) -> Vec<f64> {
    loop {
        let y: Vec<f64> = (0..d).map(|_| gaussian(rng)).collect();
        let norm = match kind {
            DatasetKind::Linear => y.iter().map(|v| v.abs()).sum::<f64>(),
            DatasetKind::Spherical => y.iter().map(|v| v * v).sum::<f64>().sqrt(),
            DatasetKind::Concave => {
                let s: f64 = y.iter().map(|v| v.abs().sqrt()).sum();
                s * s
            }
            _ => unreachable!(),
        };
        if norm > 0.0 {
            return y.iter().map(|v| v.abs() / norm).collect();
        }
    }
}

fn random_point(kind: DatasetKind, d: usize, rng: &mut StdRng) -> Vec<f64> {
    match kind {
        DatasetKind::Random1 => (0..d).map(|_| rng.gen::<f64>()).collect(),
        DatasetKind::Random2 => (0..d).map(|_| (1.0 + gaussian(rng)).abs()).collect(),
        _ => unreachable!(),
    }
}

fn antichain_points(
    kind: DatasetKind,
    n: usize,
    d: usize,
    rng: &mut StdRng,
    budget: u64,
) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = (0..n).map(|_| random_point(kind, d, rng)).collect();
    let mut redraws = 0u64;
    while let Some(j) = find_dominated_by(n, |i| rows[i].as_slice()) {
        if redraws >= budget {
            return Err(Error::ResampleBudgetExhausted { budget });
        }
        rows[j] = random_point(kind, d, rng);
        redraws += 1;
    }
    Ok(rows)
}
