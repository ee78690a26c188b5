//! Critical determinants and optimal lattice packings of planar p-balls.
//!
//! The unit ball `D_p = { |x|^p + |y|^p <= 1 }` is treated for every `p >= 1`
//! together with the Chebyshev limit `p = inf`. The crate computes
//!
//! - the critical determinant `Δ(D_p)` and a critical lattice, choosing between the
//!   two endpoint branches of the Minkowski–Cohn moduli family,
//! - the Davis constant `p_0` where those branches cross,
//! - the doubled critical lattice, which realises the densest lattice packing of `D_p`,
//!
//! and verifies all of it independently by brute-force lattice enumeration.
//!
//! ## Modules
//!
//! - [`numerics`]: gamma function and bracketed root finding
//! - [`ball`]: exponents, gauges, areas and the classification of balls by `p`
//! - [`moduli`]: the moduli family `Δ(p, σ)` and its endpoint constants
//! - [`critical`]: `Δ(D_p)`, `p_0`, `κ_p` and critical/packing lattice constructors
//! - [`lattice`]: planar lattices, enumeration, admissibility, packing and density checks
//! - [`cli`]: the `minkowski` command-line front end

pub mod ball;
pub mod cli;
pub mod critical;
mod error;
pub mod lattice;
pub mod moduli;
pub mod numerics;

pub use ball::{area, classify, gauge, Ball, BallClass, Exponent, Point};
pub use critical::{
    critical_determinant, critical_lattice, davis_constant, kappa_minkowski, kappa_optimal,
    packing_lattice, Branch, CriticalResult,
};
pub use error::{Error, Result};
pub use lattice::{
    density, determinant, enumerate_points, from_moduli, is_admissible, is_packing, min_gauge,
    moduli_scan, Lattice2, ScanReport, VerifyReport,
};
pub use moduli::{delta, delta0, delta1, delta_doubled, sigma_p, tau_of_sigma, tau_p, ModuliPoint};
