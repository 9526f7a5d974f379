use std::fmt;

use super::metric::Vec3;

/// A point of the extended phase space `(tau, p_tau, M, p_M, x^i, p_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExtendedPhaseSpacePoint {
    pub tau: f64,
    pub p_tau: f64,
    /// Rest-energy variable.
    pub m: f64,
    pub p_m: f64,
    pub x: [f64; 3],
    pub p: [f64; 3],
}

/// Canonical coordinate labels, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coordinate {
    Tau,
    PTau,
    M,
    PM,
    X(usize),
    P(usize),
}

impl Coordinate {
    pub const ALL: [Coordinate; 10] = [
        Coordinate::Tau,
        Coordinate::PTau,
        Coordinate::M,
        Coordinate::PM,
        Coordinate::X(0),
        Coordinate::X(1),
        Coordinate::X(2),
        Coordinate::P(0),
        Coordinate::P(1),
        Coordinate::P(2),
    ];

    pub fn index(self) -> usize {
        match self {
            Coordinate::Tau => 0,
            Coordinate::PTau => 1,
            Coordinate::M => 2,
            Coordinate::PM => 3,
            Coordinate::X(i) => 4 + i,
            Coordinate::P(i) => 7 + i,
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Tau => write!(f, "tau"),
            Coordinate::PTau => write!(f, "p_tau"),
            Coordinate::M => write!(f, "M"),
            Coordinate::PM => write!(f, "p_M"),
            Coordinate::X(i) => write!(f, "x{}", i + 1),
            Coordinate::P(i) => write!(f, "p{}", i + 1),
        }
    }
}

/// `(coordinate, momentum)` index pairs.
pub const CANONICAL_PAIRS: [(usize, usize); 5] = [(0, 1), (2, 3), (4, 7), (5, 8), (6, 9)];

impl ExtendedPhaseSpacePoint {
    /// A point on the constraint surface: `p_tau = M`, `p_M = 0`.
    pub fn on_surface(tau: f64, m: f64, x: [f64; 3], p: [f64; 3]) -> Self {
        Self {
            tau,
            p_tau: m,
            m,
            p_m: 0.0,
            x,
            p,
        }
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.tau, self.p_tau, self.m, self.p_m, self.x[0], self.x[1], self.x[2], self.p[0],
            self.p[1], self.p[2],
        ]
    }

    pub fn from_array(a: &[f64; 10]) -> Self {
        Self {
            tau: a[0],
            p_tau: a[1],
            m: a[2],
            p_m: a[3],
            x: [a[4], a[5], a[6]],
            p: [a[7], a[8], a[9]],
        }
    }

    pub fn get(&self, c: Coordinate) -> f64 {
        self.to_array()[c.index()]
    }

    pub fn position(&self) -> Vec3 {
        Vec3::from(self.x)
    }

    pub fn momentum(&self) -> Vec3 {
        Vec3::from(self.p)
    }

    pub fn constraints(&self) -> ConstraintPair {
        ConstraintPair {
            phi1: self.m - self.p_tau,
            phi2: self.p_m,
        }
    }

    /// `(T, E) = (tau - p_M, p_tau)`; on the surface this is `(tau, M)`.
    pub fn reduced_canonical_pair(&self) -> (f64, f64) {
        (self.tau - self.p_m, self.p_tau)
    }
}

/// Values of `phi1 = M - p_tau` and `phi2 = p_M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintPair {
    pub phi1: f64,
    pub phi2: f64,
}

impl ConstraintPair {
    pub fn max_abs(&self) -> f64 {
        self.phi1.abs().max(self.phi2.abs())
    }
}

pub fn phi1(pt: &ExtendedPhaseSpacePoint) -> f64 {
    pt.m - pt.p_tau
}

pub fn phi2(pt: &ExtendedPhaseSpacePoint) -> f64 {
    pt.p_m
}
