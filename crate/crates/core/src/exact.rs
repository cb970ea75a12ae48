//! Exact hypervolume and contribution computation.
//!
//! Two independent routes are provided: recursive objective slicing (HSO) as
//! the production fallback, and subset inclusion-exclusion as a brute-force
//! oracle for cross-checking. The module also evaluates the instance hardness
//! diagnostic that governs the racing solver's expected sample count.

use crate::error::{Error, Result};
use crate::geometry::{dominates_coords, ContributionBox, Front, Point};

/// Largest front size accepted by the inclusion-exclusion oracle (2^n subsets).
pub const INCLUSION_EXCLUSION_MAX: usize = 25;

/// Exact hypervolume algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactAlgo {
    /// Hypervolume by Slicing Objectives: recursive slicing, one objective at
    /// a time, slicing the last dimension first.
    Hso,
    /// Signed sum over all nonempty subsets; exponential, capped at
    /// [`INCLUSION_EXCLUSION_MAX`] boxes.
    InclusionExclusion,
}

/// Volume of the union of the boxes spanned by `points` from the origin.
///
/// Accepts an empty slice (volume 0). All points must share one dimension.
pub fn hyp_points(points: &[Point], algo: ExactAlgo) -> Result<f64> {
    let Some(first) = points.first() else {
        return Ok(0.0);
    };
    let d = first.dim();
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let rows: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
    match algo {
        ExactAlgo::Hso => Ok(hso(&rows, d)),
        ExactAlgo::InclusionExclusion => {
            if points.len() > INCLUSION_EXCLUSION_MAX {
                return Err(Error::TooManyBoxesForInclusionExclusion {
                    n: points.len(),
                    max: INCLUSION_EXCLUSION_MAX,
                });
            }
            Ok(inclusion_exclusion(&rows, d))
        }
    }
}

/// Hypervolume of a front: the volume jointly dominated by its points.
pub fn hyp(front: &Front, algo: ExactAlgo) -> Result<f64> {
    hyp_points(front.points(), algo)
}

/// Exact contribution of box `idx`: `hyp(front) - hyp(front \ idx)`, clamped
/// at zero against negative floating-point residue.
pub fn con_exact(front: &Front, idx: usize, algo: ExactAlgo) -> Result<f64> {
    if idx >= front.len() {
        return Err(Error::IndexOutOfBounds {
            index: idx,
            len: front.len(),
        });
    }
    let total = hyp(front, algo)?;
    let rest: Vec<Point> = front
        .points()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != idx)
        .map(|(_, p)| p.clone())
        .collect();
    let without = hyp_points(&rest, algo)?;
    Ok((total - without).max(0.0))
}

/// Exact contribution of box `idx` computed inside its contribution bounding
/// box: the influencers are translated so `bb.lower` becomes the origin,
/// clipped to `bb.upper`, and their union volume is subtracted from the box
/// volume. Equals [`con_exact`] when `bb` and `influencers` belong to `idx`.
pub fn con_exact_in_bb(
    front: &Front,
    idx: usize,
    bb: &ContributionBox,
    influencers: &[usize],
) -> f64 {
    debug_assert!(idx < front.len());
    let d = front.dim();
    let vol_bb = bb.volume();
    if vol_bb == 0.0 {
        return 0.0;
    }
    let mut clipped: Vec<Vec<f64>> = Vec::with_capacity(influencers.len());
    for &j in influencers {
        let b = front.point(j).coords();
        let mut row = Vec::with_capacity(d);
        for ((bk, lo), hi) in b.iter().zip(&bb.lower).zip(&bb.upper) {
            let extent = (bk.min(*hi) - lo).max(0.0);
            if extent == 0.0 {
                break;
            }
            row.push(extent);
        }
        if row.len() == d {
            clipped.push(row);
        }
    }
    let rows: Vec<&[f64]> = clipped.iter().map(|r| r.as_slice()).collect();
    (vol_bb - hso(&rows, d)).max(0.0)
}

/// Exact least contributor: the index with minimal contribution (smallest
/// index on exact ties) and that contribution.
pub fn mincon_lc_exact(front: &Front, algo: ExactAlgo) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for idx in 0..front.len() {
        let con = con_exact(front, idx, algo)?;
        match best {
            Some((_, v)) if con >= v => {}
            _ => best = Some((idx, con)),
        }
    }
    Ok(best.expect("front is nonempty"))
}

/// One summand of the hardness measure.
#[derive(Debug, Clone, PartialEq)]
pub struct HardnessTerm {
    pub index: usize,
    pub bb_volume: f64,
    pub contribution: f64,
    /// Gap in the denominator: `sec-min - MINCON` for the least contributor,
    /// `V_A - MINCON` otherwise.
    pub denominator: f64,
}

/// Instance hardness diagnostic. `hardness` is `f64::INFINITY` when the
/// minimal contribution is attained more than once.
#[derive(Debug, Clone, PartialEq)]
pub struct HardnessReport {
    pub hardness: f64,
    pub terms: Vec<HardnessTerm>,
}

/// Evaluates the hardness measure governing the solver's expected sample
/// count: for each box the squared ratio of bounding-box volume to its
/// contribution gap, times `ln(n/delta)` plus a log-log factor clamped below
/// at zero. Uses exact contributions (HSO) and is diagnostic-only.
pub fn hardness(front: &Front, delta: f64) -> Result<HardnessReport> {
    let n = front.len();
    if n < 2 {
        return Err(Error::FrontTooSmall { n, required: 2 });
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }

    let cons: Vec<f64> = (0..n)
        .map(|i| con_exact(front, i, ExactAlgo::Hso))
        .collect::<Result<_>>()?;
    let bb_vols: Vec<f64> = (0..n)
        .map(|i| front.contribution_box(i).map(|bb| bb.volume()))
        .collect::<Result<_>>()?;

    let lc = (0..n)
        .min_by(|&a, &b| cons[a].partial_cmp(&cons[b]).unwrap())
        .unwrap();
    let mincon = cons[lc];
    let secmin = (0..n)
        .filter(|&i| i != lc)
        .map(|i| cons[i])
        .fold(f64::INFINITY, f64::min);
    let max_bb = bb_vols.iter().copied().fold(0.0, f64::max);

    let terms: Vec<HardnessTerm> = (0..n)
        .map(|i| HardnessTerm {
            index: i,
            bb_volume: bb_vols[i],
            contribution: cons[i],
            denominator: if i == lc {
                secmin - mincon
            } else {
                cons[i] - mincon
            },
        })
        .collect();

    // Two or more minimal contributors: the measure is undefined; report it
    // as infinite.
    if secmin == mincon {
        return Ok(HardnessReport {
            hardness: f64::INFINITY,
            terms,
        });
    }

    let log_n_delta = (n as f64 / delta).ln();
    let mut h = 0.0;
    for term in &terms {
        let ratio = term.bb_volume / term.denominator;
        let inner = (max_bb / term.denominator).ln();
        let loglog = if inner > 1.0 { inner.ln() } else { 0.0 };
        h += ratio * ratio * (log_n_delta + loglog);
    }
    Ok(HardnessReport { hardness: h, terms })
}

/// Union volume by recursive objective slicing over the last logical
/// dimension. `rows` need at least `d` coordinates each; only the first `d`
/// are used. Dominated projections are pruned at every level.
fn hso(rows: &[&[f64]], d: usize) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    if d == 1 {
        return rows.iter().map(|r| r[0]).fold(0.0, f64::max);
    }
    let mut order: Vec<&[f64]> = rows.to_vec();
    // Descending in the sliced dimension; full lexicographic tie-break keeps
    // the result independent of input order.
    order.sort_unstable_by(|a, b| {
        b[d - 1].total_cmp(&a[d - 1]).then_with(|| {
            b[..d]
                .iter()
                .zip(&a[..d])
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let mut active: Vec<&[f64]> = Vec::new();
    let mut vol = 0.0;
    for (i, p) in order.iter().enumerate() {
        if !active.iter().any(|q| dominates_prefix(q, p, d - 1)) {
            active.retain(|q| !dominates_prefix(p, q, d - 1));
            active.push(p);
        }
        let z = p[d - 1];
        let z_next = if i + 1 < order.len() {
            order[i + 1][d - 1]
        } else {
            0.0
        };
        let depth = z - z_next;
        if depth > 0.0 {
            vol += depth * hso(&active, d - 1);
        }
    }
    vol
}

fn dominates_prefix(a: &[f64], b: &[f64], k: usize) -> bool {
    dominates_coords(&a[..k], &b[..k])
}

/// Union volume by inclusion-exclusion: signed sum over every nonempty subset
/// of the product of coordinate-wise minima. Exponential in `rows.len()`.
fn inclusion_exclusion(rows: &[&[f64]], d: usize) -> f64 {
    let mut scratch = vec![vec![0.0; d]; rows.len() + 1];
    let mut acc = 0.0;
    subset_sum(rows, d, 0, 0, &mut scratch, &mut acc);
    acc
}

fn subset_sum(
    rows: &[&[f64]],
    d: usize,
    i: usize,
    count: usize,
    mins: &mut [Vec<f64>],
    acc: &mut f64,
) {
    if i == rows.len() {
        if count > 0 {
            let vol: f64 = mins[count].iter().product();
            if count % 2 == 1 {
                *acc += vol;
            } else {
                *acc -= vol;
            }
        }
        return;
    }
    subset_sum(rows, d, i + 1, count, mins, acc);
    for k in 0..d {
        let prev = if count == 0 {
            f64::INFINITY
        } else {
            mins[count][k]
        };
        mins[count + 1][k] = prev.min(rows[i][k]);
    }
    subset_sum(rows, d, i + 1, count + 1, mins, acc);
}
