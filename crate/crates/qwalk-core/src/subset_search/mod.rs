//! k-subset finding by a walk on q- and (q+1)-subsets, and its query-cost model.

pub mod cost;
pub mod walk;

pub use cost::{cost_model, optimal_mu, stated_optimal_exponent, CostBreakdown, CostModel, CostTerm, CostVariant};
pub use walk::{
    collision_schedule, subset_success_curve, subset_walk_run, Schedule, ScheduleOptimum, Side, SubsetBasisState,
    SubsetProblem, SubsetProperty, SubsetRun, SubsetWalk, SubsetWalkState, MAX_ELEMENTS,
};
