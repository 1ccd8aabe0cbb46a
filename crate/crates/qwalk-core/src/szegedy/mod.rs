//! Szegedy quantization of Markov chains: two-register walk, spectral theorem and marked-vertex bounds.

pub mod marked;
pub mod spectrum;
pub mod walk;

pub use marked::{
    classical_hit_probability, complete_graph_chain, isometry_span_walk, marked_modify, marked_phase_gap,
    IsometrySpanWalk, MarkedModification, PhaseGap, BUSY_TOL,
};
pub use spectrum::{phase_distance, spectrum_csv, spectrum_map, SpectrumMap, SpectrumPair};
pub use walk::{
    check_row_stochastic, detailed_balance_defect, discriminant, random_symmetric_chain, swap_matrix, szegedy_build,
    szegedy_from_chain, Discriminant, IsometryDefects, TwoRegisterWalk,
};
