//! Two clocks held at different heights in a weak uniform field drift apart
//! at the rate `g q / c^2`.

use clocklab::classical::{integrate, ClockSystem, ExtendedPhaseSpacePoint, StaticField};

fn reading(sys: &ClockSystem<'_, StaticField>, height: f64, t: f64) -> clocklab::Result<f64> {
    let start = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [height, 0.0, 0.0], [0.0; 3]);
    Ok(integrate(sys, start, t, 1e-3)?.last().tau)
}

fn main() -> clocklab::Result<()> {
    let (g, c, t) = (1e-6, 1.0, 10.0);
    let field = StaticField::uniform_lapse(g, c);
    let sys = ClockSystem::new(&field, 0.0, c);
    let floor = reading(&sys, 0.0, t)?;
    println!("g = {g:e}, t = {t}; floor clock reads {floor:.15}");
    println!("  height q   (tau_q - tau_0)/t        g q / c^2       rel. error");
    for q in [0.25, 0.5, 1.0, 2.0] {
        let rate = (reading(&sys, q, t)? - floor) / t;
        let want = g * q / (c * c);
        println!(
            "{q:>10} {rate:>20.12e} {want:>16.12e} {:>12.2e}",
            (rate - want).abs() / want
        );
    }

    // the same clock near a point mass runs slow by roughly GM/(c^2 r)
    let gm = 1e-4;
    let well = StaticField::isotropic(gm, c);
    let sys = ClockSystem::new(&well, 0.0, c);
    println!("\npoint mass GM = {gm:e}:");
    for r in [1.0, 2.0, 4.0] {
        let start = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [r, 0.0, 0.0], [0.0; 3]);
        let tau = integrate(&sys, start, 1.0, 1e-3)?.last().tau;
        println!(
            "  r = {r}:  1 - tau/t = {:.6e}   GM/(c^2 r) = {:.6e}",
            1.0 - tau,
            gm / (c * c * r)
        );
    }
    Ok(())
}
