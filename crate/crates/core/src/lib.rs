//! Finding a least hypervolume contributor of a set of axis-aligned boxes
//! anchored at the origin.
//!
//! Exact computation of hypervolume contributions is intractable beyond small
//! instances, so the central solver ([`race::solve`]) races Monte Carlo
//! estimates of all contributions against each other and returns, with
//! probability at least `1 - delta`, a box whose contribution is within a
//! `(1 + epsilon)` factor of the minimum. Exact algorithms ([`exact`]) serve
//! as fallback for small subproblems and as verification oracles, and
//! [`dataset`] provides the seeded benchmark front generators.

pub mod dataset;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod race;

pub use dataset::{gaussian, generate, generate_with_budget, DatasetKind};
pub use error::{Error, Result};
pub use exact::{
    con_exact, con_exact_in_bb, hardness, hyp, hyp_points, mincon_lc_exact, ExactAlgo,
    HardnessReport, HardnessTerm,
};
pub use geometry::{box_volume, ContributionBox, Front, Point};
pub use race::{
    delta_of, required_samples, solve, solve_deterministic_replay, solve_traced, RaceConfig,
    RaceState, RaceTrace, SolveResult,
};
