//! Classical random walks, discrete and continuous quantum walks, and the
//! search algorithms built on them, with exact small-scale simulation.

pub mod classical_walks;
pub mod coined_walks;
pub mod core_math;
pub mod ctqw;
pub mod error;
pub mod graphs;
pub mod grover_search;
pub mod scattering_walks;
pub mod subset_search;
pub mod szegedy;

pub use error::{Result, WalkError};
