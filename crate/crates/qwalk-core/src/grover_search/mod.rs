//! Grover search with oracle query accounting, the π/3 fixed-point variant and the abstract search analysis.

pub mod abstract_search;
pub mod fixed_point;
pub mod grover;
pub mod oracle;

pub use abstract_search::{abstract_search_analyze, AbstractSearchAnalysis, SpectralPair, PAIR_TOL};
pub use fixed_point::{fixed_point_queries, fixed_point_run, fixed_point_series, FixedPointBase, FixedPointLevel};
pub use grover::{
    grover_auto_steps, grover_run, grover_success_closed_form, grover_theta, GroverRun, Steps, TwoDimTrajectory,
};
pub use oracle::{
    apply_diffusion, apply_uniform_phase, diffusion_matrix, selective_phase_matrix, uniform_vector, Oracle,
};
