//! Completion-time region of the two-user Gaussian multiple-access channel.
//!
//! Two users with `tau1` and `tau2` bits per source unit share a Gaussian
//! channel with receive SNRs `P1`, `P2`. A user that finishes early goes
//! silent, which frees the channel for the other. This crate computes which
//! completion-time pairs `(d1, d2)` are achievable, solves weighted-sum and
//! minimax completion-time problems in closed form, builds time-sharing
//! schedules that achieve a target pair, and checks the closed forms against
//! a brute-force grid oracle.
//!
//! All math is generic over [`Scalar`] (`f32` or `f64`); the `*F64` aliases
//! below cover the common case.
//!
//! ```
//! use ctregion::{ChannelConfigF64, TrafficLoadF64, minimax, minimize_weighted_sum};
//!
//! let cfg = ChannelConfigF64::new(3.0, 3.0).unwrap();
//! let load = TrafficLoadF64::new(1.0, 1.0).unwrap();
//! let best = minimax(&cfg, &load);
//! assert!((best.value - 1.424828748).abs() < 1e-9);
//! let ws = minimize_weighted_sum(&cfg, &load, 0.2).unwrap();
//! assert_eq!(ws.cell(), "Case II, D2(A)");
//! ```

pub mod capacity;
pub mod completion;
pub mod constrained;
pub mod error;
pub mod geometry;
pub mod optimizer;
pub mod oracle;
pub mod scalar;
pub mod schedule;

pub use capacity::{
    corner_points, gamma, pentagon_contains, point_to_point_rate, point_to_point_rate_by_index,
    standard_capacity_region, ChannelConfig, RatePair, User,
};
pub use completion::{
    build_region, case_boundaries, classify_case, ct_contains, ct_contains_point, ct_query, ct_slacks,
    map_rate_to_ct, minimax_value, outer_bound, point_c, point_c_for_case, Branch, CaseKind,
    CompletionTimePair, RegionDescription, RegionPiece, TrafficLoad,
};
pub use constrained::{
    clamp_transform, constrained_contains, constraint_slacks, decompose_rate, transform_contains,
    ConstrainedRateQuery, RateDecomposition, RateSlacks,
};
pub use error::{Error, RateConstraint, Result};
pub use geometry::{region_contains, ConvexPiece, HalfPlane, LabeledPoint, Point};
pub use optimizer::{
    minimax, minimize_subregion, minimize_weighted_sum, objective_d, thresholds, MinimaxSolution, RatePoint,
    Thresholds, WeightedSumSolution,
};
pub use oracle::{
    dominant_extreme_points, oracle_minimax, oracle_region_equivalence, oracle_weighted_min,
    region_disagreements, FeasibleGrid, GridSpec, OracleReport,
};
pub use scalar::Scalar;
pub use schedule::{compose, synthesize, validate, ActiveUsers, Phase, Schedule, ValidationReport, Violation};

pub type ChannelConfigF64 = ChannelConfig<f64>;
pub type TrafficLoadF64 = TrafficLoad<f64>;
pub type RatePairF64 = RatePair<f64>;
pub type CompletionTimePairF64 = CompletionTimePair<f64>;
pub type RegionDescriptionF64 = RegionDescription<f64>;
pub type ScheduleF64 = Schedule<f64>;
pub type GridSpecF64 = GridSpec<f64>;

pub type ChannelConfigF32 = ChannelConfig<f32>;
pub type TrafficLoadF32 = TrafficLoad<f32>;
pub type CompletionTimePairF32 = CompletionTimePair<f32>;
