//! Discrete-time coined quantum walks.

pub mod asymptotics;
pub mod boundary;
pub mod coins;
pub mod decoherence;
pub mod limit;
pub mod walk;

pub use asymptotics::{hadamard_asymptotics, hadamard_envelope, HadamardAsymptotics};
pub use boundary::{absorbing_line_quantum, AbsorbingLine};
pub use coins::{coin, grover_params, Coin, CoinKind};
pub use decoherence::{decoherence_step, decohere_evolve, decohere_series, DensityState, Measurement};
pub use limit::{
    hitting_analysis, quantum_limit_dist, quantum_mixing_time, time_averaged, HittingAnalysis, QuantumMixingReport,
    DEGENERACY_TOL,
};
pub use walk::{initial_symmetry, CoinedWalk};
