//! Benchmark harness: sweeps front sizes for one dataset family, solves each
//! instance repeatedly and writes per-cell CSV rows with the median runtime.

use std::fmt::Write as _;

use anyhow::Result;
use hvlc::{generate, solve, DatasetKind, RaceConfig};

pub const CSV_HEADER: &str =
    "dataset,n,d,seed,epsilon,delta,median_seconds,run_seconds,total_samples,returned_indices";

#[derive(Debug, Clone)]
pub struct BenchParams {
    pub kind: DatasetKind,
    pub d: usize,
    pub n_values: Vec<usize>,
    pub reps: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub kind: DatasetKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub median_seconds: f64,
    pub run_seconds: Vec<f64>,
    pub total_samples: Vec<u64>,
    pub returned_indices: Vec<usize>,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        let join = |parts: Vec<String>| parts.join(";");
        let mut row = String::new();
        write!(
            row,
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind.name(),
            self.n,
            self.d,
            self.seed,
            self.epsilon,
            self.delta,
            self.median_seconds,
            join(self.run_seconds.iter().map(|s| s.to_string()).collect()),
            join(self.total_samples.iter().map(|s| s.to_string()).collect()),
            join(
                self.returned_indices
                    .iter()
                    .map(|s| s.to_string())
                    .collect()
            ),
        )
        .expect("writing to String cannot fail");
        row
    }
}

/// Exact median: middle element for odd counts, mean of the two middle
/// elements for even counts.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// The log-spaced size grid `floor(exp(k/100))`, deduplicated, capped at `max`.
pub fn exp_grid(max: usize) -> Vec<usize> {
    let mut values = Vec::new();
    let mut k = 0u32;
    loop {
        let n = (f64::from(k) / 100.0).exp().floor() as usize;
        if n > max {
            break;
        }
        if values.last() != Some(&n) {
            values.push(n);
        }
        k += 1;
    }
    values
}

/// Runs every (n, rep) cell serially. The front and each rep's solver seed are
/// derived from `(seed, n, d, rep)`, so any cell can be reproduced in
/// isolation.
pub fn run_bench(params: &BenchParams) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::with_capacity(params.n_values.len());
    for &n in &params.n_values {
        let front_seed = cell_seed(params.seed, n, params.d, 0);
        let front = generate(params.kind, n, params.d, front_seed)?;
        let mut run_seconds = Vec::with_capacity(params.reps);
        let mut total_samples = Vec::with_capacity(params.reps);
        let mut returned_indices = Vec::with_capacity(params.reps);
        for rep in 0..params.reps {
            let config = RaceConfig::new(params.epsilon, params.delta).with_seed(cell_seed(
                params.seed,
                n,
                params.d,
                rep as u64 + 1,
            ));
            let result = solve(&front, &config)?;
            run_seconds.push(result.elapsed.as_secs_f64());
            total_samples.push(result.total_samples);
            returned_indices.push(result.index);
        }
        records.push(BenchRecord {
            kind: params.kind,
            n,
            d: params.d,
            seed: params.seed,
            epsilon: params.epsilon,
            delta: params.delta,
            median_seconds: median(&run_seconds),
            run_seconds,
            total_samples,
            returned_indices,
        });
    }
    Ok(records)
}

fn cell_seed(seed: u64, n: usize, d: usize, rep: u64) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (d as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ rep.wrapping_mul(0x1656_67B1_9E37_79F9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
