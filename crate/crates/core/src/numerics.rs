//! Scalar numeric kernels shared by the rest of the crate.
//!
//! [`gamma`] is a Lanczos approximation (g = 7, nine terms) that is accurate to a
//! few ulps on the positive axis. [`find_root`] is Brent's method on a validated
//! [`Bracket`], falling back to bisection whenever the interpolated step is not
//! trustworthy.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default absolute tolerance of [`find_root`].
pub const DEFAULT_TOL: f64 = 1e-13;

/// Iteration cap of [`find_root`].
pub const MAX_ITERATIONS: usize = 200;

/// Largest argument accepted by [`gamma`] before the result overflows.
pub const GAMMA_MAX_ARG: f64 = 171.0;

/// Above this the argument is reduced by the recurrence before the Lanczos sum.
const LANCZOS_MAX_ARG: f64 = 12.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// The gamma function for `0 < x <= 171`.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= GAMMA_MAX_ARG) {
        return Err(Error::Domain { function: "gamma", value: x });
    }
    if x.fract() == 0.0 {
        // exact factorials, (x - 1)! <= 170! is representable
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate range.
        return Ok(lanczos(x + 1.0) / x);
    }
    if x > LANCZOS_MAX_ARG {
        // Γ(x) = Γ(x - k) (x - k)...(x - 1); the product keeps the relative error
        // near k ulps where the Lanczos power term would lose several digits.
        let k = (x - LANCZOS_MAX_ARG).ceil();
        let base = x - k;
        let product = (0..k as u32).fold(1.0, |acc, i| acc * (base + i as f64));
        return Ok(lanczos(base) * product);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let sum = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + i as f64));
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * sum
}

/// A root-enclosing interval `[lo, hi]` with the function values at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the interval encloses a sign change.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brent's method. Returns once the enclosing interval is narrower than `tol`
/// (plus a relative term of a few ulps) or an exact zero is hit.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NoConvergence { lo: b.min(c), hi: b.max(c), iterations: 0 });
        }
    }
    Err(Error::NoConvergence { lo: b.min(c), hi: b.max(c), iterations: MAX_ITERATIONS })
}

/// [`find_root`] on `[lo, hi]` with the bracket built from `f`.
pub fn solve<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let bracket = Bracket::new(&f, lo, hi)?;
    find_root(f, bracket, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn gamma_classical_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!(rel_err(gamma(0.5).unwrap(), 1.772_453_850_905_516_0) < 1e-13);
        assert!(rel_err(gamma(1.5).unwrap(), 0.886_226_925_452_758_0) < 1e-13);
        assert!(rel_err(gamma(2.0).unwrap(), 1.0) < 1e-14);
        assert!(rel_err(gamma(5.0).unwrap(), 24.0) < 1e-13);
    }

    #[test]
    fn gamma_matches_high_precision_reference() {
        // 40-digit reference values
        let reference = [
            (0.1, 9.513_507_698_668_731_285_8),
            (2.5, 1.329_340_388_179_137_020_5),
            (7.3, 1_271.423_633_663_908_839_9),
            (33.3, 7.487_577_596_522_632_327_4e35),
            (100.25, 2.948_466_281_838_769_97e156),
            (170.5, 5.562_092_414_559_999_610_7e305),
        ];
        for (x, want) in reference {
            let got = gamma(x).unwrap();
            assert!(rel_err(got, want) < 1e-13, "gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let mut x = 0.5;
        while x <= 10.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn gamma_rejects_out_of_domain() {
        for x in [0.0, -1.0, -0.5, 171.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(gamma(x), Err(Error::Domain { .. })), "x = {x}");
        }
    }

    #[test]
    fn root_of_quadratic_is_sqrt2() {
        let f = |x: f64| x * x - 2.0;
        let x = solve(f, 1.0, 2.0, 1e-14).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn root_of_linear() {
        let x = solve(|x| x - 1.0, 0.0, 2.0, DEFAULT_TOL).unwrap();
        assert!((x - 1.0).abs() < 1e-13);
    }

    #[test]
    fn root_of_euclidean_tau_equation() {
        let f = |t: f64| 2.0 * (1.0 - t).powi(2) - (1.0 + t * t);
        let x = solve(f, 0.0, 0.999, DEFAULT_TOL).unwrap();
        assert!((x - 0.267_949_192_431_122_70).abs() < 1e-13);
        assert!((x - (2.0 - 3f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn exact_zero_at_endpoint_is_returned() {
        let b = Bracket::from_values(0.0, 1.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(b, Error::NoSignChange { .. }));
        let b = Bracket::from_values(0.0, 1.0, -0.0, 1.0);
        // -0.0 has a negative sign bit, so this is accepted and the endpoint is a root.
        assert_eq!(find_root(|x| x, b.unwrap(), 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn missing_sign_change_is_reported() {
        let err = solve(|x| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
        assert!(Bracket::new(|x| x, 1.0, -1.0).is_err());
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let b = Bracket::new(|x| x, -1.0, 1.0).unwrap();
        assert!(find_root(|x| x, b, 0.0).is_err());
    }

    #[test]
    fn result_is_bracket_independent_for_monotone_f() {
        let f = |x: f64| x.powi(3) + x - 3.0;
        let r1 = solve(f, 0.0, 2.0, 1e-14).unwrap();
        let r2 = solve(f, 1.0, 1.5, 1e-14).unwrap();
        let r3 = solve(f, -10.0, 10.0, 1e-14).unwrap();
        assert!((r1 - r2).abs() < 1e-13 && (r1 - r3).abs() < 1e-13);
        assert_eq!(r1, solve(f, 0.0, 2.0, 1e-14).unwrap());
    }

    #[test]
    fn discontinuous_step_still_converges_by_bisection() {
        let f = |x: f64| if x < 0.3 { -1.0 } else { 1.0 };
        let x = solve(f, 0.0, 1.0, 1e-12).unwrap();
        assert!((x - 0.3).abs() < 1e-11);
    }
}
