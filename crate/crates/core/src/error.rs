use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the supported domain")]
    Domain { function: &'static str, value: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not converge after {iterations} iterations, last bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("invalid exponent {0}: p must be a real number >= 1 or inf")]
    InvalidExponent(f64),

    #[error("invalid ball scale {0}: must be finite and > 0")]
    InvalidScale(f64),

    #[error("sigma = {sigma} outside the moduli domain [1, {sigma_max}] for p = {p}")]
    OutsideModuliDomain { p: f64, sigma: f64, sigma_max: f64 },

    #[error("degenerate lattice basis (determinant {det})")]
    DegenerateBasis { det: f64 },

    #[error("enumeration box too large: coefficient bounds ({m_bound}, {n_bound})")]
    EnumerationOverflow { m_bound: f64, n_bound: f64 },

    #[error("lattice is not a packing lattice (shortest vector length {min_length} < 2)")]
    NotAPacking { min_length: f64 },

    #[error("branch {branch} is not available for p = {exponent}")]
    InvalidBranch { branch: String, exponent: String },

    #[error("moduli lattice at p = {p}, sigma = {sigma} is not admissible (min gauge {min_gauge})")]
    InadmissibleModuliLattice { p: f64, sigma: f64, min_gauge: f64 },

    #[error("{0}")]
    InvalidArgument(String),
}
