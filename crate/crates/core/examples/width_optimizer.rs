//! Golden-section search for the energy width that minimizes the proper-time
//! variance after a fixed time.

use clocklab::quantum::optimize::width_bracket;
use clocklab::quantum::optimize_clock_width;
use clocklab::UnitContext;

fn main() {
    let units = UnitContext::natural();
    let (e0, p0, sigma_p): (f64, f64, f64) = (10.0, 7.5, 1e-3);
    let h = e0.hypot(p0);
    // D = E/H has slope a = p0^2 / H^3 in E, so var ~ (a sigma t)^2 + 1/(4 sigma^2)
    let a = p0 * p0 / h.powi(3);
    println!(
        "boosted clock e0 = {e0}, p0 = {p0}; search bracket {:?}",
        width_bracket(e0)
    );
    println!("     t   sigma_opt  (closed form)    min var  (closed form)   hbar t/<H>  evals");
    for t in [25.0, 100.0, 400.0] {
        match optimize_clock_width(e0, p0, sigma_p, t, units) {
            Ok(o) => println!(
                "{t:>6} {:>11.5} {:>14.5} {:>10.5} {:>14.5} {:>12.5} {:>6}",
                o.sigma_e_opt,
                (1.0 / (2.0 * a * t)).sqrt(),
                o.min_var,
                a * t,
                o.bound,
                o.evaluations
            ),
            Err(e) => println!("{t:>6} {e}"),
        }
    }

    println!("\nclock at rest, p0 = 0, sigma_p = 0.05, t = 100:");
    match optimize_clock_width(e0, 0.0, 0.05, 100.0, units) {
        Ok(o) => println!(
            "  sigma_opt = {:.5}, min var = {:.5}",
            o.sigma_e_opt, o.min_var
        ),
        Err(e) => println!("  {e}"),
    }
}
