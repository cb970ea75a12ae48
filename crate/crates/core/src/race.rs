//! Monte Carlo racing solver for the least hypervolume contributor.
//!
//! Every surviving box holds a confidence interval around its estimated
//! contribution, derived from a Chernoff bound. Rounds successively tighten a
//! shared width target; boxes whose intervals prove them non-minimal are
//! deleted, and the race stops early once the current leader is certified to
//! be within a `(1 + epsilon)` factor of every survivor. The returned box has
//! contribution at most `(1 + epsilon) * MINCON` with probability at least
//! `1 - delta`.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exact::con_exact_in_bb;
use crate::geometry::{ContributionBox, Front};

/// Solver parameters.
///
/// `epsilon` must be strictly positive: with exact ties in the front the race
/// can only terminate through the approximation criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct RaceConfig {
    pub epsilon: f64,
    pub delta: f64,
    /// Exponent skew of the per-round error budget, in (0, 1].
    pub gamma: f64,
    /// Width factor the leader is pushed to relative to the round target, in (0, 1).
    pub alpha: f64,
    /// Per-round shrink factor of the width target, in (0, 1).
    pub round_shrink: f64,
    pub seed: u64,
    pub enable_push: bool,
    pub enable_exact_switch: bool,
    /// Constant scaling the estimated cost of an exact HSO evaluation.
    pub hso_cost_constant: f64,
}

impl RaceConfig {
    pub fn new(epsilon: f64, delta: f64) -> Self {
        Self {
            epsilon,
            delta,
            gamma: 1.0,
            alpha: 0.2,
            round_shrink: 0.5,
            seed: 0,
            enable_push: true,
            enable_exact_switch: true,
            hso_cost_constant: 1.0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let in_open = |x: f64, lo: f64, hi: f64| x > lo && x < hi;
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidEpsilon(self.epsilon));
        }
        if !in_open(self.delta, 0.0, 1.0) {
            return Err(Error::InvalidDelta(self.delta));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::InvalidGamma(self.gamma));
        }
        if !in_open(self.alpha, 0.0, 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !in_open(self.round_shrink, 0.0, 1.0) {
            return Err(Error::InvalidRoundShrink(self.round_shrink));
        }
        if !(self.hso_cost_constant.is_finite() && self.hso_cost_constant > 0.0) {
            return Err(Error::InvalidHsoCostConstant(self.hso_cost_constant));
        }
        Ok(())
    }
}

/// Confidence half-width of a box's contribution estimate after `samples`
/// draws in round `round`:
/// `sqrt(ln(2 n R^(1+gamma) (1+gamma) / (gamma delta)) / (2 samples)) * vol_bb`.
pub fn delta_of(vol_bb: f64, samples: u64, n: usize, round: u64, gamma: f64, delta: f64) -> f64 {
    if vol_bb == 0.0 {
        return 0.0;
    }
    debug_assert!(samples >= 1);
    debug_assert!(round >= 1);
    (log_factor(n, round, gamma, delta) / (2.0 * samples as f64)).sqrt() * vol_bb
}

/// Smallest sample count whose half-width does not exceed `target`.
///
/// The squared volume-to-target ratio is formed before squaring so that the
/// result stays accurate for the extremely small box volumes that arise in
/// high dimensions.
pub fn required_samples(
    vol_bb: f64,
    target: f64,
    n: usize,
    round: u64,
    gamma: f64,
    delta: f64,
) -> u64 {
    if vol_bb == 0.0 {
        return 0;
    }
    debug_assert!(target > 0.0);
    let ratio = vol_bb / target;
    let raw = (0.5 * log_factor(n, round, gamma, delta) * ratio * ratio).ceil();
    let mut m = if raw >= u64::MAX as f64 {
        return u64::MAX;
    } else {
        (raw as u64).max(1)
    };
    // Guard the ceiling against floating-point underestimation.
    while delta_of(vol_bb, m, n, round, gamma, delta) > target && m < u64::MAX {
        m += 1;
    }
    m
}

fn log_factor(n: usize, round: u64, gamma: f64, delta: f64) -> f64 {
    (2.0 * n as f64 * (round as f64).powf(1.0 + gamma) * (1.0 + gamma) / (gamma * delta)).ln()
}

/// Per-box sampling statistics of the race.
#[derive(Debug, Clone)]
pub struct RaceState {
    pub index: usize,
    pub bb: ContributionBox,
    pub vol_bb: f64,
    /// Boxes that can cover a point sampled in `bb`, in descending order of
    /// the volume of `bb` they dominate.
    pub influencers: Vec<usize>,
    pub samples: u64,
    pub successes: u64,
    /// `successes / samples * vol_bb`; the unbiased contribution estimate.
    pub estimate: f64,
    /// Current confidence half-width; zero once `exact` is set.
    pub width: f64,
    /// Coordinate comparisons spent scanning influencers so far.
    pub ops: u64,
    pub exact: bool,
    pub in_race: bool,
}

impl RaceState {
    pub fn new(front: &Front, index: usize) -> Result<Self> {
        let bb = front.contribution_box(index)?;
        let influencers = front.influencers(index, &bb)?;
        let vol_bb = bb.volume();
        Ok(Self {
            index,
            bb,
            vol_bb,
            influencers,
            samples: 0,
            successes: 0,
            estimate: 0.0,
            width: f64::INFINITY,
            ops: 0,
            exact: false,
            in_race: true,
        })
    }

    /// Draws one point uniformly in the bounding box and scans the influencers
    /// in stored order; the draw succeeds iff no influencer covers it. Updates
    /// counts, the estimate, and the comparison counter.
    pub fn sample_once(&mut self, front: &Front, rng: &mut StdRng) -> bool {
        let d = self.bb.lower.len();
        let mut point = vec![0.0; d];
        draw_point(&self.bb.lower, &self.bb.upper, rng, &mut point);
        let covered = scan_influencers(
            &point,
            &self.influencers,
            |j| front.point(j).coords(),
            &mut self.ops,
        );
        self.samples += 1;
        if !covered {
            self.successes += 1;
        }
        self.estimate = self.successes as f64 / self.samples as f64 * self.vol_bb;
        !covered
    }
}

#[inline]
fn draw_point(lower: &[f64], upper: &[f64], rng: &mut StdRng, buf: &mut [f64]) {
    for k in 0..lower.len() {
        let u: f64 = rng.gen();
        buf[k] = lower[k] + u * (upper[k] - lower[k]);
    }
}

/// True iff some influencer covers `point` (coordinatewise `point <= box`).
/// Every executed coordinate comparison is counted into `ops`.
#[inline]
fn scan_influencers<'a>(
    point: &[f64],
    influencers: &[usize],
    row: impl Fn(usize) -> &'a [f64],
    ops: &mut u64,
) -> bool {
    for &j in influencers {
        let b = row(j);
        let mut dominated = true;
        for (bk, pk) in b.iter().zip(point) {
            *ops += 1;
            if bk < pk {
                dominated = false;
                break;
            }
        }
        if dominated {
            return true;
        }
    }
    false
}

/// Outcome of a solve call.
///
/// Equality is bitwise over everything including `elapsed`; use
/// [`solve_deterministic_replay`] when comparing results across runs, which
/// zeroes the timing field.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub index: usize,
    pub estimate: f64,
    pub was_exact: bool,
    pub rounds: u64,
    pub total_samples: u64,
    pub exact_switches: u64,
    /// Deleted boxes in deletion order, with the round of deletion.
    pub eliminated_order: Vec<(usize, u64)>,
    pub elapsed: Duration,
}

/// Round-boundary snapshots for instrumentation and statistical tests.
#[derive(Debug, Clone, Default)]
pub struct RaceTrace {
    pub rounds: Vec<RoundRecord>,
}

#[derive(Debug, Clone)]
pub struct RoundRecord {
    pub round: u64,
    /// Width target of the round.
    pub target: f64,
    /// State of every box still racing, after sampling and push, before deletion.
    pub boxes: Vec<BoxSnapshot>,
    pub deletions: Vec<DeletionRecord>,
}

#[derive(Debug, Clone)]
pub struct BoxSnapshot {
    pub index: usize,
    pub estimate: f64,
    pub width: f64,
    pub samples: u64,
    pub exact: bool,
}

/// A deletion event with the interval bounds that justified it.
#[derive(Debug, Clone)]
pub struct DeletionRecord {
    pub deleted: usize,
    pub leader: usize,
    pub deleted_estimate: f64,
    pub deleted_width: f64,
    pub leader_estimate: f64,
    pub leader_width: f64,
}

/// Early-stop criterion: with `leader = (estimate, width)` minimal, every
/// other `(estimate, width)` pair must have a strictly positive lower bound
/// whose ratio to the leader's upper bound is within `1 + epsilon`.
pub fn abortion_met(
    leader: (f64, f64),
    others: impl IntoIterator<Item = (f64, f64)>,
    epsilon: f64,
) -> bool {
    let upper = leader.0 + leader.1;
    others.into_iter().all(|(estimate, width)| {
        let lower = estimate - width;
        lower > 0.0 && upper / lower <= 1.0 + epsilon
    })
}

/// Solves for a box whose contribution is at most `(1 + epsilon) * MINCON`
/// with probability at least `1 - delta`.
pub fn solve(front: &Front, config: &RaceConfig) -> Result<SolveResult> {
    solve_inner(front, config, &mut None)
}

/// As [`solve`], additionally returning per-round snapshots.
pub fn solve_traced(front: &Front, config: &RaceConfig) -> Result<(SolveResult, RaceTrace)> {
    let mut trace = Some(RaceTrace::default());
    let result = solve_inner(front, config, &mut trace)?;
    Ok((result, trace.unwrap()))
}

/// As [`solve`] but with `elapsed` zeroed, so identical `(front, config)`
/// inputs produce bit-identical results.
pub fn solve_deterministic_replay(front: &Front, config: &RaceConfig) -> Result<SolveResult> {
    let mut result = solve(front, config)?;
    result.elapsed = Duration::ZERO;
    Ok(result)
}

fn solve_inner(
    front: &Front,
    config: &RaceConfig,
    trace: &mut Option<RaceTrace>,
) -> Result<SolveResult> {
    config.validate()?;
    let start = Instant::now();
    let n = front.len();
    let d = front.dim();

    let fast = |index: usize, estimate: f64, start: Instant| SolveResult {
        index,
        estimate,
        was_exact: true,
        rounds: 0,
        total_samples: 0,
        exact_switches: 0,
        eliminated_order: Vec::new(),
        elapsed: start.elapsed(),
    };

    if n == 1 {
        return Ok(fast(0, front.point(0).volume(), start));
    }
    // A dominated box contributes exactly zero and is always a valid answer.
    if let Some(j) = front.find_dominated() {
        return Ok(fast(j, 0.0, start));
    }

    let mut states: Vec<RaceState> = (0..n)
        .map(|i| RaceState::new(front, i))
        .collect::<Result<_>>()?;
    if let Some(s) = states.iter().find(|s| s.vol_bb == 0.0) {
        return Ok(fast(s.index, 0.0, start));
    }

    // Contiguous coordinate matrix for the sampling scans.
    let mut flat = Vec::with_capacity(n * d);
    for p in front.points() {
        flat.extend_from_slice(p.coords());
    }

    let mut rngs: Vec<StdRng> = (0..n)
        .map(|i| StdRng::seed_from_u64(mix_seed(config.seed, i as u64)))
        .collect();
    let thresholds: Vec<f64> = states
        .iter()
        .map(|s| config.hso_cost_constant * hso_cost_estimate(s.influencers.len(), d))
        .collect();

    let mut alive: Vec<usize> = (0..n).collect();
    let mut eliminated_order: Vec<(usize, u64)> = Vec::new();
    let mut exact_switches = 0u64;
    let mut round = 0u64;
    let mut target: f64 = states.iter().map(|s| s.vol_bb).fold(0.0, f64::max);
    let mut point_buf = vec![0.0; d];

    let finish = |states: &[RaceState],
                  lc: usize,
                  round: u64,
                  exact_switches: u64,
                  eliminated_order: Vec<(usize, u64)>,
                  start: Instant| SolveResult {
        index: lc,
        estimate: states[lc].estimate,
        was_exact: states[lc].exact,
        rounds: round,
        total_samples: states.iter().map(|s| s.samples).sum(),
        exact_switches,
        eliminated_order,
        elapsed: start.elapsed(),
    };

    loop {
        target *= config.round_shrink;
        round += 1;

        for &i in &alive {
            update_box(
                &mut states[i],
                front,
                &flat,
                d,
                &mut rngs[i],
                thresholds[i],
                target,
                round,
                n,
                config,
                &mut exact_switches,
                &mut point_buf,
            );
        }

        if config.enable_push {
            let push_target = config.alpha * target;
            loop {
                let lc = argmin(&states, &alive);
                if states[lc].exact || states[lc].width <= push_target {
                    break;
                }
                update_box(
                    &mut states[lc],
                    front,
                    &flat,
                    d,
                    &mut rngs[lc],
                    thresholds[lc],
                    push_target,
                    round,
                    n,
                    config,
                    &mut exact_switches,
                    &mut point_buf,
                );
            }
        }

        let lc = argmin(&states, &alive);
        let (lc_estimate, lc_width) = (states[lc].estimate, states[lc].width);

        let mut round_record = trace.as_ref().map(|_| RoundRecord {
            round,
            target,
            boxes: alive
                .iter()
                .map(|&i| BoxSnapshot {
                    index: i,
                    estimate: states[i].estimate,
                    width: states[i].width,
                    samples: states[i].samples,
                    exact: states[i].exact,
                })
                .collect(),
            deletions: Vec::new(),
        });

        let mut survivors = Vec::with_capacity(alive.len());
        for &i in &alive {
            let doomed = i != lc && states[i].estimate - states[i].width > lc_estimate + lc_width;
            if doomed {
                states[i].in_race = false;
                eliminated_order.push((i, round));
                if let Some(record) = round_record.as_mut() {
                    record.deletions.push(DeletionRecord {
                        deleted: i,
                        leader: lc,
                        deleted_estimate: states[i].estimate,
                        deleted_width: states[i].width,
                        leader_estimate: lc_estimate,
                        leader_width: lc_width,
                    });
                }
            } else {
                survivors.push(i);
            }
        }
        alive = survivors;

        if let (Some(t), Some(record)) = (trace.as_mut(), round_record) {
            t.rounds.push(record);
        }

        if alive.len() == 1 {
            return Ok(finish(
                &states,
                lc,
                round,
                exact_switches,
                eliminated_order,
                start,
            ));
        }

        // Once every survivor holds an exact value there is no uncertainty
        // left; the leader is a true minimum among them. This also covers
        // survivors whose exact contribution rounds to zero, which neither
        // the deletion rule nor the ratio criterion can separate.
        if alive.iter().all(|&i| states[i].exact) {
            return Ok(finish(
                &states,
                lc,
                round,
                exact_switches,
                eliminated_order,
                start,
            ));
        }

        let met = abortion_met(
            (lc_estimate, lc_width),
            alive
                .iter()
                .filter(|&&i| i != lc)
                .map(|&i| (states[i].estimate, states[i].width)),
            config.epsilon,
        );
        if met {
            return Ok(finish(
                &states,
                lc,
                round,
                exact_switches,
                eliminated_order,
                start,
            ));
        }
    }
}

/// Brings one box below the width target: switches to the exact contribution
/// when the sampling effort spent has exceeded the estimated cost of an exact
/// evaluation, otherwise draws the missing batch of samples.
#[allow(clippy::too_many_arguments)]
fn update_box(
    state: &mut RaceState,
    front: &Front,
    flat: &[f64],
    d: usize,
    rng: &mut StdRng,
    threshold: f64,
    target: f64,
    round: u64,
    n: usize,
    config: &RaceConfig,
    exact_switches: &mut u64,
    point_buf: &mut [f64],
) {
    if state.exact || state.width <= target {
        return;
    }
    if config.enable_exact_switch && state.ops as f64 > threshold {
        state.estimate = con_exact_in_bb(front, state.index, &state.bb, &state.influencers);
        state.width = 0.0;
        state.exact = true;
        *exact_switches += 1;
        return;
    }
    let needed = required_samples(state.vol_bb, target, n, round, config.gamma, config.delta);
    if needed > state.samples {
        let batch = needed - state.samples;
        for _ in 0..batch {
            draw_point(&state.bb.lower, &state.bb.upper, rng, point_buf);
            let covered = scan_influencers(
                point_buf,
                &state.influencers,
                |j| &flat[j * d..j * d + d],
                &mut state.ops,
            );
            if !covered {
                state.successes += 1;
            }
        }
        state.samples = needed;
        state.estimate = state.successes as f64 / state.samples as f64 * state.vol_bb;
    }
    state.width = delta_of(
        state.vol_bb,
        state.samples,
        n,
        round,
        config.gamma,
        config.delta,
    );
}

/// Index of the box with the smallest estimate among `alive`; ties break to
/// the smallest index.
fn argmin(states: &[RaceState], alive: &[usize]) -> usize {
    let mut best = alive[0];
    for &i in &alive[1..] {
        if states[i].estimate < states[best].estimate {
            best = i;
        }
    }
    best
}

/// Estimated coordinate-comparison cost of an exact HSO evaluation on `n_a`
/// boxes in `d` dimensions: `n_a * C(n_a + d - 2, d - 1)`, saturating to
/// infinity instead of overflowing, which disables the switch in high
/// dimensions.
fn hso_cost_estimate(n_a: usize, d: usize) -> f64 {
    if n_a == 0 {
        return 0.0;
    }
    let top = n_a + d - 2;
    let k = (d - 1).min(top - (d - 1));
    let mut binom = 1.0f64;
    for i in 0..k {
        binom = binom * (top - i) as f64 / (i + 1) as f64;
        if !binom.is_finite() {
            return f64::INFINITY;
        }
    }
    n_a as f64 * binom
}

/// Derives an independent per-box stream seed from the solver seed, so that
/// extra draws for one box never perturb another box's sample sequence.
fn mix_seed(seed: u64, idx: u64) -> u64 {
    let mut z = seed ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
