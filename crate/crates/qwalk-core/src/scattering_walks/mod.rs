//! Scattering quantum walks on directed edge states and the graph searches built on them.

pub mod search;
pub mod walk;

pub use search::{
    complete_graph_auto_steps, complete_graph_basis, complete_graph_search, complete_graph_theta, complete_graph_walk,
    reduce_complete_graph, star_delta, star_graph_basis, star_graph_search, star_graph_walk, star_initial_state,
    star_opt_steps, star_reduced, trajectory_csv, CompleteReduction, InvariantBasis, SearchOutcome, StarOutcome,
};
pub use walk::{gamma, EdgeBasis, LocalCoin, ScatteringWalk};
