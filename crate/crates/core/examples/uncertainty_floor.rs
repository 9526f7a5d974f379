//! `Delta tau Delta E >= hbar / 2` across Gaussian, chirped and two-hump clocks.

use clocklab::quantum::{
    chirped_gaussian_state, expectation, gaussian_state, two_hump_state, uncertainty_product,
    GaussianClockSpec, Observable,
};
use clocklab::UnitContext;

fn main() -> clocklab::Result<()> {
    let units = UnitContext::natural();
    let spec = GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5);
    println!(
        "{:<26} {:>10} {:>10} {:>12} {:>10}",
        "state", "dtau", "dE", "product", "<tau>"
    );
    let show = |name: String, s: &clocklab::quantum::MomentumSpaceState| -> clocklab::Result<()> {
        let u = uncertainty_product(s)?;
        let mean = expectation(s, Observable::Tau)?;
        println!(
            "{name:<26} {:>10.6} {:>10.6} {:>12.9} {mean:>10.5}",
            u.d_tau, u.d_e, u.product
        );
        Ok(())
    };
    for sigma in [0.1, 0.5, 2.0] {
        show(
            format!("gaussian sigma_E = {sigma}"),
            &gaussian_state(&GaussianClockSpec::new(30.0, sigma, 0.0, 0.5), 1.0, units)?,
        )?;
    }
    for beta in [0.1, 0.5, 1.0] {
        show(
            format!("chirp beta = {beta}"),
            &chirped_gaussian_state(&spec, beta, 1.0, units)?,
        )?;
    }
    for a in [0.5, 1.0, 2.0] {
        show(
            format!("two humps a = {a}"),
            &two_hump_state(&spec, a, 1.0, units)?,
        )?;
    }
    println!("hbar / 2 = 0.5");
    Ok(())
}
