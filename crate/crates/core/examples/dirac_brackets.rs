//! Poisson versus Dirac brackets of the extended phase-space coordinates at a
//! seeded random point on the constraint surface.

use clocklab::classical::brackets::{
    dirac_table, expected_dirac_entry, poisson_bracket, DEFAULT_STEP, TABLE_COORDINATES,
};
use clocklab::classical::point::{phi1, phi2};
use clocklab::classical::{dirac_bracket, ExtendedPhaseSpacePoint};
use clocklab::scenario::probe_point;

fn main() {
    let pt = probe_point(2024, 0);
    println!(
        "point: tau = {:.3}, M = {:.3}, x = {:.3?}, p = {:.3?}",
        pt.tau, pt.m, pt.x, pt.p
    );
    println!(
        "{{phi1, phi2}} = {:.12}   (second class)",
        poisson_bracket(phi1, phi2, &pt, DEFAULT_STEP)
    );

    let table = dirac_table(&pt, DEFAULT_STEP);
    print!("\n{:>6}", "");
    for c in TABLE_COORDINATES {
        print!("{:>10}", c.to_string());
    }
    println!();
    let mut worst: f64 = 0.0;
    for (i, row) in table.iter().enumerate() {
        print!("{:>6}", TABLE_COORDINATES[i].to_string());
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - expected_dirac_entry(i, j)).abs());
            print!("{v:>10.6}");
        }
        println!();
    }
    println!("max deviation from the canonical table: {worst:.2e}");

    // the reduced pair T = tau - p_M, E = p_tau is canonical under the Dirac bracket
    let t = |p: &ExtendedPhaseSpacePoint| p.reduced_canonical_pair().0;
    let e = |p: &ExtendedPhaseSpacePoint| p.reduced_canonical_pair().1;
    println!(
        "{{T, E}}_D = {:.12}",
        dirac_bracket(t, e, &pt, DEFAULT_STEP)
    );
}
