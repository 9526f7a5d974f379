//! A clock built from negative energies: `<D> < 0`, so its proper time runs
//! backwards while evolution stays unitary.

use clocklab::quantum::{
    evolve, expectation, gaussian_state, tau_moments_simulated, variance_law_predict,
    GaussianClockSpec, Observable,
};
use clocklab::UnitContext;

fn main() -> clocklab::Result<()> {
    let units = UnitContext::natural();
    let state = gaussian_state(&GaussianClockSpec::new(-10.0, 0.5, 0.0, 0.5), 100.0, units)?;
    let law = variance_law_predict(&state)?;
    println!(
        "<E> = {:.6}  <H> = {:.6}  <D> = {:.9}",
        expectation(&state, Observable::E)?,
        expectation(&state, Observable::H)?,
        law.mean_d
    );
    println!("     t       <tau>      var(sim)      var(law)        norm");
    for t in [0.0, 1.0, 10.0, 100.0] {
        let m = tau_moments_simulated(&state, t)?;
        println!(
            "{t:>6} {:>11.6} {:>13.8} {:>13.8} {:>11.3e}",
            m.mean_tau,
            m.var_tau,
            law.variance_at(t),
            evolve(&state, t).norm_squared() - 1.0
        );
    }
    Ok(())
}
