//! The Minkowski–Cohn moduli family of `D_p`-admissible lattices with three pairs
//! of points on the boundary of `D_p`.
//!
//! Such a lattice has basis
//!
//! ```text
//! a = A (1, τ),   b = B (-1, σ),   A = (1 + τ^p)^(-1/p),   B = (1 + σ^p)^(-1/p)
//! ```
//!
//! with `a`, `b` and `a + b` on the unit circle of the p-norm. Its determinant is
//! `Δ(p, σ) = (τ + σ) A B` for `1 <= σ <= σ_p`, where `τ = τ(σ)` is fixed by the
//! third boundary pair.

use crate::error::{Error, Result};
use crate::numerics::{find_root, solve, Bracket};

/// Tolerance used for every root solved in this module.
pub const ROOT_TOL: f64 = 1e-15;

/// Endpoint residual below which an interval end is accepted as the root.
const ENDPOINT_RESIDUAL: f64 = 1e-14;

/// Slack allowed on `σ` beyond `[1, σ_p]` before it is rejected as out of domain.
const SIGMA_SLACK: f64 = 1e-12;

/// A point `(p, τ, σ)` of the moduli space with its determinant `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliPoint {
    pub p: f64,
    pub tau: f64,
    pub sigma: f64,
    pub delta: f64,
}

impl ModuliPoint {
    /// `(τ + σ)(1 + τ^p)^(-1/p)(1 + σ^p)^(-1/p)` from the stored coordinates.
    pub fn recompute_delta(&self) -> f64 {
        moduli_determinant(self.p, self.tau, self.sigma)
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// `(1 + t^p)^(-1/p)` for `t >= 0`, evaluated without overflowing `t^p`.
pub(crate) fn inv_pnorm(t: f64, p: f64) -> f64 {
    if t <= 1.0 {
        (1.0 + t.powf(p)).powf(-1.0 / p)
    } else {
        (1.0 + t.powf(-p)).powf(-1.0 / p) / t
    }
}

pub(crate) fn moduli_determinant(p: f64, tau: f64, sigma: f64) -> f64 {
    (tau + sigma) * inv_pnorm(tau, p) * inv_pnorm(sigma, p)
}

/// `σ_p = (2^p - 1)^(1/p)`, evaluated as `2 (1 - 2^-p)^(1/p)`.
pub fn sigma_p(p: f64) -> f64 {
    2.0 * (1.0 - (-p).exp2()).powf(1.0 / p)
}

/// Residual of `2 (1 - τ)^p = 1 + τ^p`.
fn tau_p_residual(p: f64, tau: f64) -> f64 {
    2.0 * (1.0 - tau).powf(p) - 1.0 - tau.powf(p)
}

/// The root `τ_p ∈ [0, 1)` of `2 (1 - τ)^p = 1 + τ^p`.
pub fn tau_p(p: f64) -> Result<f64> {
    check_p(p)?;
    // residual is 1 at τ = 0 and -2 at τ = 1
    solve(|t| tau_p_residual(p, t), 0.0, 1.0, ROOT_TOL)
}

/// Gauge of the third boundary point `a + b`, minus one.
fn third_point_residual(p: f64, tau: f64, sigma: f64) -> f64 {
    let a = inv_pnorm(tau, p);
    let b = inv_pnorm(sigma, p);
    (a - b).abs().powf(p) + (a * tau + b * sigma).powf(p) - 1.0
}

fn check_sigma(p: f64, sigma: f64) -> Result<f64> {
    let sigma_max = sigma_p(p);
    if !(sigma >= 1.0 - SIGMA_SLACK && sigma <= sigma_max + SIGMA_SLACK) {
        return Err(Error::OutsideModuliDomain { p, sigma, sigma_max });
    }
    Ok(sigma.clamp(1.0, sigma_max.max(1.0)))
}

/// The unique `τ ∈ [0, τ_p]` putting `a + b` on the boundary of `D_p`.
pub fn tau_of_sigma(p: f64, sigma: f64) -> Result<f64> {
    check_p(p)?;
    let sigma = check_sigma(p, sigma)?;
    let tau_max = tau_p(p)?;
    let f = |t: f64| third_point_residual(p, t, sigma);
    let (f_lo, f_hi) = (f(0.0), f(tau_max));
    if f_lo.abs() <= ENDPOINT_RESIDUAL {
        return Ok(0.0);
    }
    if f_hi.abs() <= ENDPOINT_RESIDUAL {
        return Ok(tau_max);
    }
    let bracket = Bracket::from_values(0.0, tau_max, f_lo, f_hi)?;
    find_root(f, bracket, ROOT_TOL)
}

/// `Δ(p, σ)` with the full moduli point.
pub fn delta(p: f64, sigma: f64) -> Result<ModuliPoint> {
    let tau = tau_of_sigma(p, sigma)?;
    let sigma = check_sigma(p, sigma)?;
    Ok(ModuliPoint { p, tau, sigma, delta: moduli_determinant(p, tau, sigma) })
}

/// Branch `Δ^(0)_p = Δ(p, σ_p) = σ_p / 2`.
pub fn delta0(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(0.5 * sigma_p(p))
}

/// Branch `Δ^(1)_p = Δ(p, 1) = 4^(-1/p) (1 + τ_p) / (1 - τ_p)`.
pub fn delta1(p: f64) -> Result<f64> {
    let t = tau_p(p)?;
    Ok(4f64.powf(-1.0 / p) * (1.0 + t) / (1.0 - t))
}

/// Determinant of the moduli lattice of the doubled ball `2 D_p`: `4 Δ(p, σ)`.
pub fn delta_doubled(p: f64, sigma: f64) -> Result<f64> {
    Ok(4.0 * delta(p, sigma)?.delta)
}
