//! Continuous-time walks e^{−iHt} on graphs and the constructions built on them.

mod cycle;
mod glued;
mod hamiltonian;
mod hypercube;
mod limiting;
mod nand;
mod search;

pub use cycle::{cycle_bessel_check, cycle_bessel_profile, wavefront_csv, BesselCheck};
pub use glued::{
    glued_graph, glued_line, glued_traversal, glued_trees_reduce, EquivalenceReport, GluedKind, GluedReduction,
    Traversal, GLUED_FULL_MAX,
};
pub use hamiltonian::{ctqw_run, CtqwPropagator, Hamiltonian, WeightedLine, SYMMETRY_TOL};
pub use hypercube::{hypercube_antipode_full, hypercube_antipode_prob, hypercube_weight_line};
pub use limiting::{
    ctqw_limiting, ctqw_time_average, cycle_limiting_closed_form, energy_groups, TimeAverage, ENERGY_TOL,
};
pub use nand::{
    classical_nand_cost, nand_eval, nand_game_instance, NandEval, NandTree, NAND_SENTINEL, NAND_THRESHOLD,
};
pub use search::{
    analog_optimal_time, analog_search, analog_success_closed_form, search_gamma_sweep, AnalogPoint, GammaPoint,
};
