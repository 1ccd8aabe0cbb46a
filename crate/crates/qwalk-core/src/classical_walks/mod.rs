//! Markov-chain walks on graphs and the classical algorithms built from them.

mod algorithms;
mod chain;
mod sampling;

pub use algorithms::{
    traverse_glued_trees_memory, traverse_hypercube_memory, two_sat_walk, GluedTraversal, SatFormula,
    SatOutcome,
};
pub use chain::{
    absorbing_hit_prob_line, drunkard_pdf, line_absorption_cumulative, line_chain, line_index,
    restart_estimate, unbiased_chain, HittingReport, MarkovChain, MixingReport, StationaryReport,
    DEFAULT_T_MAX,
};
pub use sampling::{
    exact_expectation_y, linear_schedule, metropolis_chain, metropolis_from, metropolis_step,
    partition_function, simulated_annealing, telescoping_partition_estimate, AnnealResult, EnergyModel,
    IsingChain, MetropolisRun, QuadraticModel, TableModel, TelescopeOptions, TelescopeReport,
};
