//! Accumulated proper-time variance against `hbar t / <H>` for a family of
//! Gaussian clocks, next to the sharp-energy estimate of its coefficients.
//!
//! For clocks at rest in momentum the exact `quad` coefficient is orders of
//! magnitude below the estimate `(Delta E / <H>)^2`, and wide clocks end up
//! under the bound; the table shows where.

use clocklab::quantum::{
    gaussian_state, peaked_approximation_report, salecker_wigner_check, GaussianClockSpec,
};
use clocklab::UnitContext;

fn main() -> clocklab::Result<()> {
    let units = UnitContext::natural();
    let t = 100.0;
    for (p0, sigma_p) in [(0.0, 0.05), (7.5, 1e-3)] {
        println!("e0 = 10, p0 = {p0}, sigma_p = {sigma_p}, t = {t}");
        println!("  sigma_E   sharpness  exact quad  approx quad    lhs        rhs     ok");
        for sigma_e in [0.05, 0.1, 0.2236, 0.4, 0.8] {
            let spec = GaussianClockSpec::new(10.0, sigma_e, p0, sigma_p);
            let s = gaussian_state(&spec, t, units)?;
            let rep = peaked_approximation_report(&s)?;
            let sw = salecker_wigner_check(&s, t)?;
            println!(
                "  {sigma_e:<8} {:>9.4} {:>11.3e} {:>11.3e} {:>10.4} {:>9.4}  {}",
                rep.sharpness, rep.exact_quad, rep.approx_quad, sw.lhs, sw.rhs, sw.satisfied
            );
        }
        println!();
    }

    // too wide: the energy tail reaches E = p = 0 where E/H is undefined
    let wide = gaussian_state(&GaussianClockSpec::new(10.0, 2.0, 0.0, 0.05), t, units)?;
    match salecker_wigner_check(&wide, t) {
        Ok(c) => println!("sigma_E = 2: lhs {:.4}", c.lhs),
        Err(e) => println!("sigma_E = 2: {e}"),
    }
    Ok(())
}
