//! Quantized clock in flat space with no electromagnetic field: states
//! `psi(E, p)`, `tau = i hbar d/dE`, `H = sqrt(E^2 + c^2 p^2)`.
//!
//! Heisenberg-picture statements are evaluated in the Schrodinger picture:
//! the state is evolved (exactly, since `H` is diagonal) and static operators
//! are measured.

pub mod bound;
pub mod moments;
pub mod operators;
pub mod optimize;
pub mod state;

pub use bound::{
    peaked_approximation_report, salecker_wigner_check, uncertainty_product,
    PeakedApproximationReport, SaleckerWignerCheck, UncertaintyProduct,
};
pub use moments::{
    tau_moments_simulated, variance_law_predict, TauMoments, VarianceLawCoefficients,
};
pub use operators::{apply_tau, commutator_residual, evolve, expectation, Observable};
pub use optimize::{optimize_clock_width, ClockWidthOptimum};
pub use state::{
    chirped_gaussian_state, default_grids, gaussian_state, make_gaussian_state, two_hump_state,
    GaussianClockSpec, HealthPolicy, MomentumSpaceState,
};
