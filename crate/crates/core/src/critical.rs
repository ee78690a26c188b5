//! Critical determinants `Δ(D_p)`, the Davis constant and critical lattices.
//!
//! For finite `p > 1` the critical lattice is one of the two endpoint lattices of
//! the moduli family: `Λ^(0)` at `σ = σ_p` (containing `(1, 0)`) for
//! `2 <= p <= p_0`, and `Λ^(1)` at `σ = 1` (containing `(-2^(-1/p), 2^(-1/p))`)
//! otherwise. `p = 1` and `p = inf` are the two square limits and use fixed lattices.

use std::fmt;
use std::sync::OnceLock;

use crate::ball::{area, Exponent};
use crate::error::{Error, Result};
use crate::lattice::{from_moduli, Lattice2};
use crate::moduli::{check_p, delta0, delta1, sigma_p, tau_p};
use crate::numerics::{gamma, solve};

/// Published bracket of the Davis constant.
pub const DAVIS_BRACKET: (f64, f64) = (2.57, 2.58);

/// Two branch values closer than this count as agreeing.
pub const BRANCH_AGREEMENT_TOL: f64 = 1e-10;

const DAVIS_TOL: f64 = 1e-13;

static DAVIS_CONSTANT: OnceLock<f64> = OnceLock::new();

/// Which endpoint of the moduli family realises `Δ(D_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `σ = σ_p`, `Δ = σ_p / 2`.
    Branch0,
    /// `σ = 1`, `Δ = 4^(-1/p) (1 + τ_p)/(1 - τ_p)`.
    Branch1,
    /// `p = 1` or `p = inf`.
    Exact,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Branch0 => "Branch0",
            Branch::Branch1 => "Branch1",
            Branch::Exact => "Exact",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalResult {
    pub exponent: Exponent,
    /// `Δ(D_p)`.
    pub delta: f64,
    pub branch: Branch,
    /// Both branch values agree at this `p` (the overlap points `p = 2`, `p = p_0`).
    pub branches_agree: bool,
    /// `Δ(D_p)^(-p/2)`; 1 in the Chebyshev limit.
    pub kappa: f64,
    /// A critical lattice for `D_p`.
    pub lattice: Lattice2,
}

/// Solves `Δ^(0)_p = Δ^(1)_p` on the published bracket, without caching.
pub fn compute_davis_constant() -> Result<f64> {
    let (lo, hi) = DAVIS_BRACKET;
    let gap = |p: f64| match (delta0(p), delta1(p)) {
        (Ok(d0), Ok(d1)) => d0 - d1,
        _ => f64::NAN,
    };
    solve(gap, lo, hi, DAVIS_TOL)
}

/// The Davis constant `p_0 ≈ 2.5725`, computed once per process.
///
/// # Panics
///
/// If the branch difference has no sign change on `[2.57, 2.58]`.
pub fn davis_constant() -> f64 {
    *DAVIS_CONSTANT.get_or_init(|| {
        compute_davis_constant()
            .unwrap_or_else(|e| panic!("Davis constant not found in {DAVIS_BRACKET:?}: {e}"))
    })
}

/// The lattice `{(1/2, 1/2), (0, 1)}`, critical for `D_1`.
pub fn limiting_minkowski_lattice() -> Lattice2 {
    Lattice2::new([0.5, 0.5], [0.0, 1.0]).expect("non-degenerate")
}

/// The lattice `{(1, 1), (0, 1)}`, critical for `D_inf`.
pub fn limiting_chebyshev_lattice() -> Lattice2 {
    Lattice2::new([1.0, 1.0], [0.0, 1.0]).expect("non-degenerate")
}

fn active_branch(p: f64) -> Branch {
    if (2.0..=davis_constant()).contains(&p) {
        Branch::Branch0
    } else {
        Branch::Branch1
    }
}

/// `Δ(D_p)` with branch, `κ_p` and a critical lattice.
pub fn critical_determinant(e: Exponent) -> Result<CriticalResult> {
    match e {
        Exponent::Infinity => Ok(CriticalResult {
            exponent: e,
            delta: 1.0,
            branch: Branch::Exact,
            branches_agree: false,
            kappa: 1.0,
            lattice: limiting_chebyshev_lattice(),
        }),
        Exponent::Finite(p) => {
            check_p(p)?;
            if p == 1.0 {
                return Ok(CriticalResult {
                    exponent: e,
                    delta: 0.5,
                    branch: Branch::Exact,
                    branches_agree: false,
                    kappa: 2f64.sqrt(),
                    lattice: limiting_minkowski_lattice(),
                });
            }
            let (d0, d1) = (delta0(p)?, delta1(p)?);
            let branch = active_branch(p);
            let delta = if branch == Branch::Branch0 { d0 } else { d1 };
            Ok(CriticalResult {
                exponent: e,
                delta,
                branch,
                branches_agree: (d0 - d1).abs() <= BRANCH_AGREEMENT_TOL,
                kappa: delta.powf(-p / 2.0),
                lattice: critical_lattice(e, branch)?,
            })
        }
    }
}

/// The optimal constant `κ_p = Δ(D_p)^(-p/2)`.
pub fn kappa_optimal(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(critical_determinant(Exponent::Finite(p))?.kappa)
}

/// Minkowski's sufficient constant `Γ(1 + 2/p)^(1/2) / Γ(1 + 1/p)`.
pub fn kappa_minkowski(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(gamma(1.0 + 2.0 / p)?.sqrt() / gamma(1.0 + 1.0 / p)?)
}

/// Lower bound `V(D_p) / 4` on the determinant of any `D_p`-admissible lattice.
pub fn minkowski_lower_bound(e: Exponent) -> f64 {
    area(e) / 4.0
}

/// The critical lattice of the given branch.
///
/// For `p = 1` and `p = inf` only the fixed limiting lattices exist; they are
/// returned for [`Branch::Branch1`] (their usual label) and [`Branch::Exact`].
pub fn critical_lattice(e: Exponent, branch: Branch) -> Result<Lattice2> {
    let invalid = || Error::InvalidBranch { branch: branch.to_string(), exponent: e.to_string() };
    match e {
        Exponent::Infinity => match branch {
            Branch::Branch0 => Err(invalid()),
            _ => Ok(limiting_chebyshev_lattice()),
        },
        Exponent::Finite(p) => {
            check_p(p)?;
            if p == 1.0 {
                return match branch {
                    Branch::Branch0 => Err(invalid()),
                    _ => Ok(limiting_minkowski_lattice()),
                };
            }
            match branch {
                Branch::Branch0 => Ok(from_moduli(p, 0.0, sigma_p(p))),
                Branch::Branch1 => Ok(from_moduli(p, tau_p(p)?, 1.0)),
                Branch::Exact => Err(invalid()),
            }
        }
    }
}

/// The doubled critical lattice `2Λ`, which realises the densest lattice packing of `D_p`.
pub fn packing_lattice(e: Exponent) -> Result<Lattice2> {
    Ok(critical_determinant(e)?.lattice.scaled(2.0))
}
