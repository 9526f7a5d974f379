//! Classical clock with proper time and rest energy promoted to canonical
//! variables, subject to the second-class constraints `phi1 = M - p_tau`,
//! `phi2 = p_M`.

pub mod brackets;
pub mod integrate;
pub mod metric;
pub mod point;
pub mod residuals;
pub mod system;

pub use brackets::{dirac_bracket, dirac_table, dirac_table_error, poisson_bracket};
pub use integrate::{integrate, Drift, Trajectory};
pub use metric::{Electromagnetic, Gravity, StaticField, StaticMetric};
pub use point::{ConstraintPair, Coordinate, ExtendedPhaseSpacePoint};
pub use residuals::{geodesic_lorentz_residual, proper_time_residual};
pub use system::ClockSystem;
