//! The proper-time spread of a quantum clock grows exactly as
//! `quad t^2 + lin t + const`, with coefficients read off the initial state.

use clocklab::quantum::{
    commutator_residual, evolve, expectation, gaussian_state, tau_moments_simulated,
    variance_law_predict, GaussianClockSpec, Observable,
};
use clocklab::UnitContext;

fn main() -> clocklab::Result<()> {
    let units = UnitContext::natural();
    for spec in [
        GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5),
        GaussianClockSpec::new(10.0, 0.5, 4.0, 0.5).with_tau0(-3.0),
    ] {
        let state = gaussian_state(&spec, 100.0, units)?;
        let law = variance_law_predict(&state)?;
        println!(
            "e0 = {}, sigma_E = {}, p0 = {}, sigma_p = {}, tau0 = {}   grid {}x{}",
            spec.e0,
            spec.sigma_e,
            spec.p0,
            spec.sigma_p,
            spec.tau0,
            state.p_grid().len(),
            state.e_grid().len()
        );
        println!(
            "  quad = {:.6e}  lin = {:.2e}  const = {:.6}  <D> = {:.9}",
            law.quad, law.lin, law.konst, law.mean_d
        );
        println!("  [tau, E] residual {:.1e}", commutator_residual(&state)?);
        println!("       t      <tau>(t)        law    var(sim)       var(law)     rel. diff");
        for t in [0.0, 1.0, 10.0, 100.0] {
            let m = tau_moments_simulated(&state, t)?;
            let v = law.variance_at(t);
            println!(
                "  {t:>6} {:>12.8} {:>10.6} {:>11.8} {v:>14.8} {:>12.1e}",
                m.mean_tau,
                law.mean_at(t),
                m.var_tau,
                (m.var_tau - v).abs() / v
            );
        }
        let later = evolve(&state, 100.0);
        println!("  norm after t = 100: {:.15}", later.norm_squared());
        println!("  <H> = {:.9}\n", expectation(&state, Observable::H)?);
    }
    Ok(())
}
