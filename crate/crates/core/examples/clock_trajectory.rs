//! Integrate the constrained clock Hamiltonian and read its proper time.
//!
//! A clock at 0.6 c reads 8 after 10 units of coordinate time; a charged
//! clock pushed by a uniform electric field follows hyperbolic motion.

use clocklab::classical::{
    geodesic_lorentz_residual, integrate, proper_time_residual, ClockSystem, Electromagnetic,
    ExtendedPhaseSpacePoint, StaticField,
};

fn main() -> clocklab::Result<()> {
    let c = 1.0;
    let flat = StaticField::flat(c);
    let sys = ClockSystem::new(&flat, 0.0, c);
    let (m, v) = (1.0, 0.6);
    let p = m * v / (c * (c * c - v * v).sqrt());
    let traj = integrate(
        &sys,
        ExtendedPhaseSpacePoint::on_surface(0.0, m, [0.0; 3], [p, 0.0, 0.0]),
        10.0,
        1e-3,
    )?;
    let end = traj.last();
    println!(
        "flat, v = 0.6c:  t = 10  tau = {:.12}  x = {:.12}",
        end.tau, end.x[0]
    );
    println!(
        "  proper-time residual {:.2e}",
        proper_time_residual(&traj, &sys)?
    );
    let d = traj.drift(&sys)?;
    println!(
        "  drift: |phi1| {:.1e}  |phi2| {:.1e}  dH/H {:.1e}  dM/M {:.1e}",
        d.phi1, d.phi2, d.hamiltonian, d.mass
    );

    let e_field = 0.5;
    let pushed = StaticField::flat(c).with_em(Electromagnetic::Electric {
        field: [e_field, 0.0, 0.0],
    });
    let sys = ClockSystem::new(&pushed, 1.0, c);
    let traj = integrate(
        &sys,
        ExtendedPhaseSpacePoint::on_surface(0.0, m, [0.0; 3], [0.0; 3]),
        5.0,
        1e-3,
    )?;
    println!("\nuniform E = {e_field}, e = 1, from rest:");
    println!("     t        tau      tau (exact)         x     x (exact)");
    for k in (0..traj.len()).step_by(1000) {
        let (t, pt) = (traj.times[k], &traj.points[k]);
        let tau = m / (c * e_field) * (c * e_field * t / m).asinh();
        let x = ((m * m + (c * e_field * t).powi(2)).sqrt() - m) / e_field;
        println!(
            "{t:>6.2} {:>10.6} {tau:>14.6} {:>10.6} {x:>13.6}",
            pt.tau, pt.x[0]
        );
    }
    println!(
        "  geodesic/Lorentz residual {:.2e}",
        geodesic_lorentz_residual(&traj, &sys)?
    );
    Ok(())
}
