//! Falsification engine: deviation searches, anonymity checks, ratio sweeps
//! and lower-bound replays.

pub mod anonymity;
pub mod deviation;
pub mod misreport;
pub mod replay;
pub mod sweep;

pub use anonymity::{check_anonymity, AnonymityViolation, EXHAUSTIVE_PERMUTATION_LIMIT};
pub use deviation::{
    find_group_deviation, find_group_deviation_with_guard, find_unilateral_deviation, group_search_size,
    DeviationWitness, MemberCost,
};
pub use misreport::{MisreportSet, DEFAULT_GRID};
pub use replay::{replay_lower_bound, Evaluation, LowerBound, ReplayReport};
pub use sweep::{sweep, sweep_with_guard, Histogram, RatioReport, SweepRow};
