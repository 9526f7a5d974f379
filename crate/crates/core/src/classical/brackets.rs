//! Poisson and Dirac brackets by central differences over the five canonical
//! pairs `(tau, p_tau)`, `(M, p_M)`, `(x^i, p_i)`.

use super::point::{phi1, phi2, Coordinate, ExtendedPhaseSpacePoint, CANONICAL_PAIRS};

/// Default relative finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Central-difference gradient; each step is `h_step * max(1, |q|)`.
pub fn gradient<A>(obs: A, pt: &ExtendedPhaseSpacePoint, h_step: f64) -> [f64; 10]
where
    A: Fn(&ExtendedPhaseSpacePoint) -> f64,
{
    let a = pt.to_array();
    let mut grad = [0.0; 10];
    for i in 0..10 {
        let h = h_step * a[i].abs().max(1.0);
        let (mut up, mut down) = (a, a);
        up[i] += h;
        down[i] -= h;
        grad[i] = (obs(&ExtendedPhaseSpacePoint::from_array(&up))
            - obs(&ExtendedPhaseSpacePoint::from_array(&down)))
            / (2.0 * h);
    }
    grad
}

/// Canonical bracket from two gradients.
pub fn bracket_of_gradients(ga: &[f64; 10], gb: &[f64; 10]) -> f64 {
    CANONICAL_PAIRS
        .iter()
        .map(|&(q, p)| ga[q] * gb[p] - ga[p] * gb[q])
        .sum()
}

pub fn poisson_bracket<A, B>(a: A, b: B, pt: &ExtendedPhaseSpacePoint, h_step: f64) -> f64
where
    A: Fn(&ExtendedPhaseSpacePoint) -> f64,
    B: Fn(&ExtendedPhaseSpacePoint) -> f64,
{
    bracket_of_gradients(&gradient(a, pt, h_step), &gradient(b, pt, h_step))
}

/// `{A,B}_D = {A,B} + {A,phi1}{phi2,B} - {A,phi2}{phi1,B}`.
pub fn dirac_bracket<A, B>(a: A, b: B, pt: &ExtendedPhaseSpacePoint, h_step: f64) -> f64
where
    A: Fn(&ExtendedPhaseSpacePoint) -> f64,
    B: Fn(&ExtendedPhaseSpacePoint) -> f64,
{
    let g1 = gradient(phi1, pt, h_step);
    let g2 = gradient(phi2, pt, h_step);
    dirac_of_gradients(&gradient(a, pt, h_step), &gradient(b, pt, h_step), &g1, &g2)
}

/// Dirac bracket from the gradients of `A`, `B`, `phi1` and `phi2`.
pub fn dirac_of_gradients(ga: &[f64; 10], gb: &[f64; 10], g1: &[f64; 10], g2: &[f64; 10]) -> f64 {
    bracket_of_gradients(ga, gb) + bracket_of_gradients(ga, g1) * bracket_of_gradients(g2, gb)
        - bracket_of_gradients(ga, g2) * bracket_of_gradients(g1, gb)
}

/// Coordinates of the reduced phase space, in [`dirac_table`] order.
pub const TABLE_COORDINATES: [Coordinate; 8] = [
    Coordinate::Tau,
    Coordinate::M,
    Coordinate::X(0),
    Coordinate::X(1),
    Coordinate::X(2),
    Coordinate::P(0),
    Coordinate::P(1),
    Coordinate::P(2),
];

/// `{a, b}_D` for every pair of [`TABLE_COORDINATES`].
pub fn dirac_table(pt: &ExtendedPhaseSpacePoint, h_step: f64) -> [[f64; 8]; 8] {
    let g1 = gradient(phi1, pt, h_step);
    let g2 = gradient(phi2, pt, h_step);
    let grads = TABLE_COORDINATES
        .map(|c| gradient(move |p: &ExtendedPhaseSpacePoint| p.get(c), pt, h_step));
    let mut table = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            table[i][j] = dirac_of_gradients(&grads[i], &grads[j], &g1, &g2);
        }
    }
    table
}

/// The canonical values: `{tau, M} = 1`, `{x^i, p_j} = delta^i_j`, antisymmetric, else 0.
pub fn expected_dirac_entry(i: usize, j: usize) -> f64 {
    match (i, j) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        (2..=4, 5..=7) if j == i + 3 => 1.0,
        (5..=7, 2..=4) if i == j + 3 => -1.0,
        _ => 0.0,
    }
}

/// Largest deviation of [`dirac_table`] from [`expected_dirac_entry`].
pub fn dirac_table_error(pt: &ExtendedPhaseSpacePoint, h_step: f64) -> f64 {
    let table = dirac_table(pt, h_step);
    let mut worst: f64 = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - expected_dirac_entry(i, j)).abs());
        }
    }
    worst
}
