//! Dense complex linear algebra, special functions and distribution utilities.

pub mod distribution;
pub mod linalg;
pub mod special;

pub use distribution::{dist_stats, tvd, DistStats, Distribution};
pub use linalg::{
    c, cr, eig_hermitian, eig_unitary, evolve_hermitian, from_real, hermitian_defect, kron, max_abs,
    unitarity_defect, ComplexMatrix, ComplexVector, EigenDecomposition, Propagator, QuantumState,
    UnitaryEigen, C64, NORM_TOL, OP_TOL,
};
pub use special::{bessel_j, bessel_j_series, catalan, catalan_scaled, stationary_phase_p2};
