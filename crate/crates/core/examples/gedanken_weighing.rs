//! Weighing a clock two ways and watching `c^2 dm dtau / h` come out as one.
//!
//! Run with `cargo run --example gedanken_weighing`.

use clocklab::gedanken::{
    box_uncertainties, dilation_factor, efield_uncertainties, BoxExperiment, EFieldExperiment,
};
use clocklab::UnitContext;

fn main() -> clocklab::Result<()> {
    let si = UnitContext::si();

    // spring balance in a box, read to 1 um over one second
    let scale = BoxExperiment::new(1e-6, 1.0, 9.81)?.with_spring(10.0, 0.981);
    let r = box_uncertainties(&scale, &si);
    println!(
        "box     m = {:.3} kg",
        scale.mass().transpose()?.unwrap_or(f64::NAN)
    );
    println!(
        "        dp = {:.4e} kg m/s  dm = {:.4e} kg  dtau = {:.4e} s",
        r.delta_p, r.delta_m, r.delta_tau
    );
    println!(
        "        c^2 dm dtau / h = {:.15}   (against hbar/2: {:.6})",
        r.product_ratio, r.product_ratio_half_hbar
    );

    let drift = EFieldExperiment::new(1e-6, 1.0, 1.0, 1e-19, 1e3)?;
    let r = efield_uncertainties(&drift, &si)?;
    println!(
        "e-field dm = {:.4e} kg  dv = {:.1e} m/s  dtau = {:.4e} s",
        r.delta_m,
        r.delta_v.unwrap_or(0.0),
        r.delta_tau
    );
    println!("        c^2 dm dtau / h = {:.15}", r.product_ratio);

    println!("\nresolution dq [m]   box dm [kg]      box dtau [s]    ratio");
    for dq in [1e-9, 1e-6, 1e-3, 1.0] {
        let r = box_uncertainties(&BoxExperiment::new(dq, 1.0, 9.81)?, &si);
        println!(
            "{dq:>16.0e}  {:>14.4e}  {:>14.4e}  {:.15}",
            r.delta_m, r.delta_tau, r.product_ratio
        );
    }

    println!("\nv/c    sqrt(1 - v^2/c^2)");
    for beta in [0.0, 0.6, 0.9, 0.99] {
        println!("{beta:<5}  {:.10}", dilation_factor(beta * si.c, &si)?);
    }
    Ok(())
}
