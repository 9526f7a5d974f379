//! Config-driven runs: parse a flat `key = value [unit]` document, run every
//! sweep member (in parallel, merged in input order), self-check the result
//! and write a CSV table.
//!
//! | kind | checks | CSV columns |
//! |---|---|---|
//! | `GEDANKEN_BOX` | `product_ratio` | delta_q, t, g, mass, delta_p, delta_m, delta_tau, product_ratio |
//! | `GEDANKEN_EFIELD` | `product_ratio` | delta_q, t, v, mass, delta_p, delta_m, delta_v, delta_tau, product_ratio |
//! | `CLASSICAL_TRAJECTORY` | `tau_final` (flat, field-free), `proper_time`, `constraint_drift` | t, tau, p_tau, M, p_M, x1..x3, p1..p3, phi1, phi2, H |
//! | `CLASSICAL_BRACKETS` | `dirac_table` | probe, tau, M, x1..x3, p1..p3, max_error |
//! | `QUANTUM_MOMENTS` | `variance_law`, `uncertainty_floor` | t, mean_tau, var_tau_sim, var_tau_law, quad, lin, const, bound, satisfied, sharpness |
//! | `QUANTUM_BOUND_SWEEP` | `variance_law`, `sw_bound` | as `QUANTUM_MOMENTS` |
//! | `QUANTUM_OPTIMIZE` | `sw_bound` | e0, p0, sigma_p, t, sigma_e_opt, min_var, bound, evaluations |
//!
//! A sweep prepends a column named after the swept parameter. Parameter keys
//! per kind are listed by [`ScenarioKind::schema`].

pub mod config;
pub mod csv;
pub mod run;

pub use config::{
    parse_config, parse_config_with_overrides, ConfigErrors, ParamValue, ScenarioConfig,
    ScenarioKind, Sweep,
};
pub use csv::{emit_csv, render_csv, Cell};
pub use run::{probe_point, run, Check, RunReport, ScenarioError, THREADS_ENV};
