//! Planar lattices and brute-force verification of admissibility and packing claims.
//!
//! Everything here is checked by explicit enumeration of lattice points in a
//! coefficient box that provably covers the gauge ball, so the results do not
//! depend on any closed form from [`crate::moduli`] or [`crate::critical`].

use crate::ball::{area, Ball, Exponent, Point};
use crate::error::{Error, Result};
use crate::moduli::{self, check_p, inv_pnorm, sigma_p, ModuliPoint};

/// Slack on `min_gauge >= 1` for admissibility.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

/// Distance `|gauge - 1|` at which a point counts as lying on the boundary.
pub const BOUNDARY_TOL: f64 = 1e-8;

/// Slack on `min length >= 2` for packing lattices.
pub const PACKING_TOL: f64 = 1e-9;

/// Gauge radius enumerated by [`is_admissible`].
pub const ADMISSIBILITY_RADIUS: f64 = 1.5;

const MAX_COEFF_BOUND: f64 = 1e6;
const MAX_BOX_CELLS: f64 = 5e7;

/// A planar lattice `{ m a + n b : m, n ∈ Z }` with a non-degenerate basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice2 {
    a: Point,
    b: Point,
}

impl Lattice2 {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        let l = Self { a, b };
        let det = l.signed_det();
        if !(det.is_finite() && det != 0.0) {
            return Err(Error::DegenerateBasis { det });
        }
        Ok(l)
    }

    /// Builds a lattice from `[a.x, a.y, b.x, b.y]`.
    pub fn from_coords(c: [f64; 4]) -> Result<Self> {
        Self::new([c[0], c[1]], [c[2], c[3]])
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn signed_det(&self) -> f64 {
        self.a[0] * self.b[1] - self.a[1] * self.b[0]
    }

    /// `d(Λ) = |det(a, b)|`.
    pub fn determinant(&self) -> f64 {
        self.signed_det().abs()
    }

    /// The lattice `k Λ`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { a: [k * self.a[0], k * self.a[1]], b: [k * self.b[0], k * self.b[1]] }
    }

    pub fn point(&self, m: i64, n: i64) -> Point {
        let (m, n) = (m as f64, n as f64);
        [m * self.a[0] + n * self.b[0], m * self.a[1] + n * self.b[1]]
    }

    /// Coordinates of `v` in the basis `(a, b)`.
    pub fn coefficients(&self, v: Point) -> [f64; 2] {
        let det = self.signed_det();
        [
            (self.b[1] * v[0] - self.b[0] * v[1]) / det,
            (-self.a[1] * v[0] + self.a[0] * v[1]) / det,
        ]
    }

    /// True when both lattices are the same point set, up to `tol` on the
    /// integrality of basis coefficients.
    pub fn same_lattice(&self, other: &Lattice2, tol: f64) -> bool {
        let integral = |c: [f64; 2]| c.iter().all(|x| (x - x.round()).abs() <= tol);
        let rel = (self.determinant() - other.determinant()).abs() / self.determinant();
        rel <= tol
            && integral(self.coefficients(other.a))
            && integral(self.coefficients(other.b))
    }
}

/// `d(Λ)`.
pub fn determinant(l: &Lattice2) -> f64 {
    l.determinant()
}

/// The moduli lattice `{ A (1, τ), B (-1, σ) }` with `A = (1 + τ^p)^(-1/p)`
/// and `B = (1 + σ^p)^(-1/p)`. Requires `σ >= 1`, `τ >= 0`.
pub fn from_moduli(p: f64, tau: f64, sigma: f64) -> Lattice2 {
    let a = inv_pnorm(tau, p);
    let b = inv_pnorm(sigma, p);
    Lattice2 { a: [a, tau * a], b: [-b, sigma * b] }
}

/// All nonzero lattice points with `gauge <= radius_gauge`.
///
/// The gauge ball fits in the square `|x|, |y| <= R`; mapping that square through
/// the inverse basis bounds the coefficients, and one extra layer is added on
/// each side.
pub fn enumerate_points(l: &Lattice2, radius_gauge: f64, e: Exponent) -> Result<Vec<Point>> {
    if !(radius_gauge > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "enumeration radius must be > 0, got {radius_gauge}"
        )));
    }
    let half_width = e.length_of_gauge(radius_gauge);
    let det = l.determinant();
    let m_bound = (half_width * (l.b[0].abs() + l.b[1].abs()) / det).ceil() + 1.0;
    let n_bound = (half_width * (l.a[0].abs() + l.a[1].abs()) / det).ceil() + 1.0;
    let cells = (2.0 * m_bound + 1.0) * (2.0 * n_bound + 1.0);
    if !(m_bound <= MAX_COEFF_BOUND && n_bound <= MAX_COEFF_BOUND && cells <= MAX_BOX_CELLS) {
        return Err(Error::EnumerationOverflow { m_bound, n_bound });
    }
    let (mb, nb) = (m_bound as i64, n_bound as i64);
    let mut points = Vec::new();
    for m in -mb..=mb {
        for n in -nb..=nb {
            if m == 0 && n == 0 {
                continue;
            }
            let v = l.point(m, n);
            if e.gauge(v) <= radius_gauge {
                points.push(v);
            }
        }
    }
    Ok(points)
}

/// Minimum gauge over nonzero lattice points.
///
/// Enumerates with a radius that starts below the area heuristic `sqrt(d)/2`
/// and doubles in length until a point is found; the minimum over a complete
/// enumeration is then the global minimum.
pub fn min_gauge(l: &Lattice2, e: Exponent) -> Result<f64> {
    let mut length = 0.5 * l.determinant().sqrt();
    loop {
        let points = enumerate_points(l, e.gauge_of_length(length), e)?;
        if let Some(m) = points.iter().map(|&v| e.gauge(v)).reduce(f64::min) {
            return Ok(m);
        }
        length *= 2.0;
    }
}

/// Shortest l_p length of a nonzero lattice vector.
pub fn min_length(l: &Lattice2, e: Exponent) -> Result<f64> {
    Ok(e.length_of_gauge(min_gauge(l, e)?))
}

/// Result of an admissibility check against a ball `s · D_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    /// No nonzero point has gauge below `1 - ADMISSIBILITY_TOL`.
    pub admissible: bool,
    /// Smallest gauge (relative to the ball) of a nonzero point.
    pub min_gauge: f64,
    /// ± pairs within `BOUNDARY_TOL` of the boundary.
    pub boundary_pairs: usize,
    /// Nonzero points enumerated within `ADMISSIBILITY_RADIUS`.
    pub enumerated: usize,
}

/// Checks whether `l` meets the interior of `ball` only at the origin.
pub fn is_admissible(l: &Lattice2, ball: &Ball) -> Result<VerifyReport> {
    let e = ball.exponent();
    let local = l.scaled(1.0 / ball.scale());
    let points = enumerate_points(&local, ADMISSIBILITY_RADIUS, e)?;
    let gauges: Vec<f64> = points.iter().map(|&v| e.gauge(v)).collect();
    let min = match gauges.iter().copied().reduce(f64::min) {
        Some(m) => m,
        None => min_gauge(&local, e)?,
    };
    let on_boundary = gauges.iter().filter(|g| (*g - 1.0).abs() <= BOUNDARY_TOL).count();
    Ok(VerifyReport {
        admissible: min >= 1.0 - ADMISSIBILITY_TOL,
        min_gauge: min,
        boundary_pairs: on_boundary / 2,
        enumerated: points.len(),
    })
}

/// Whether the translates `D_p + v`, `v ∈ Λ`, have disjoint interiors, i.e. every
/// nonzero lattice vector has l_p length at least 2.
pub fn is_packing(l: &Lattice2, e: Exponent) -> Result<bool> {
    Ok(min_length(l, e)? >= 2.0 - PACKING_TOL)
}

/// Packing density `V(D_p) / d(Λ)`; fails unless `l` is a packing lattice.
pub fn density(l: &Lattice2, e: Exponent) -> Result<f64> {
    let min_len = min_length(l, e)?;
    if min_len < 2.0 - PACKING_TOL {
        return Err(Error::NotAPacking { min_length: min_len });
    }
    Ok(area(e) / l.determinant())
}

/// `Δ(p, σ)` sampled over `σ ∈ [1, σ_p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub p: f64,
    pub sigma_p: f64,
    pub points: Vec<ModuliPoint>,
    /// Index of the (first) smallest sampled `Δ`.
    pub argmin: usize,
    pub min_delta: f64,
    pub delta_at_one: f64,
    pub delta_at_sigma_p: f64,
    /// Smallest enumerated gauge over all sampled lattices.
    pub min_lattice_gauge: f64,
}

impl ScanReport {
    pub fn argmin_sigma(&self) -> f64 {
        self.points[self.argmin].sigma
    }

    pub fn argmin_at_one(&self) -> bool {
        self.argmin == 0
    }

    pub fn argmin_at_sigma_p(&self) -> bool {
        self.argmin + 1 == self.points.len()
    }

    pub fn endpoint_min(&self) -> f64 {
        self.delta_at_one.min(self.delta_at_sigma_p)
    }
}

/// Samples the moduli family at `n_samples` equally spaced `σ ∈ [1, σ_p]`. Every
/// sampled lattice is checked for `D_p`-admissibility by enumeration; the first
/// failure aborts the scan.
pub fn moduli_scan(p: f64, n_samples: usize) -> Result<ScanReport> {
    check_p(p)?;
    if p == 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if n_samples < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 samples, got {n_samples}")));
    }
    let s_max = sigma_p(p);
    let ball = Ball::unit(Exponent::Finite(p));
    let mut points = Vec::with_capacity(n_samples);
    let mut min_lattice_gauge = f64::INFINITY;
    for i in 0..n_samples {
        let sigma = if i + 1 == n_samples {
            s_max
        } else {
            1.0 + (s_max - 1.0) * i as f64 / (n_samples - 1) as f64
        };
        let m = moduli::delta(p, sigma)?;
        let report = is_admissible(&from_moduli(p, m.tau, m.sigma), &ball)?;
        if !report.admissible {
            return Err(Error::InadmissibleModuliLattice { p, sigma, min_gauge: report.min_gauge });
        }
        min_lattice_gauge = min_lattice_gauge.min(report.min_gauge);
        points.push(m);
    }
    let argmin = points
        .iter()
        .enumerate()
        .fold(0, |best, (i, m)| if m.delta < points[best].delta { i } else { best });
    Ok(ScanReport {
        p,
        sigma_p: s_max,
        argmin,
        min_delta: points[argmin].delta,
        delta_at_one: points[0].delta,
        delta_at_sigma_p: points[n_samples - 1].delta,
        points,
        min_lattice_gauge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{tau_of_sigma, tau_p};
    use proptest::prelude::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn hexagonal() -> Lattice2 {
        Lattice2::new([1.0, 0.0], [-0.5, SQRT3 / 2.0]).unwrap()
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn determinant_examples() {
        let id = Lattice2::new([1.0, 0.0], [0.0, 1.0]).unwrap();
        assert_eq!(determinant(&id), 1.0);
        let l1 = Lattice2::new([0.5, 0.5], [0.0, 1.0]).unwrap();
        assert_eq!(determinant(&l1), 0.5);
        let l2 = Lattice2::new([1.0, 0.0], [0.5, SQRT3 / 2.0]).unwrap();
        assert!((determinant(&l2) - SQRT3 / 2.0).abs() < 1e-16);
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        assert!(matches!(
            Lattice2::new([1.0, 2.0], [2.0, 4.0]),
            Err(Error::DegenerateBasis { .. })
        ));
        assert!(Lattice2::new([f64::NAN, 0.0], [0.0, 1.0]).is_err());
    }

    #[test]
    fn from_moduli_examples() {
        let l = from_moduli(2.0, 0.0, SQRT3);
        assert!((l.a()[0] - 1.0).abs() < 1e-16 && l.a()[1] == 0.0);
        assert!((l.b()[0] + 0.5).abs() < 1e-15 && (l.b()[1] - SQRT3 / 2.0).abs() < 1e-15);
        for p in [1.3, 2.0, 3.5] {
            let l = from_moduli(p, tau_p(p).unwrap(), 1.0);
            let c = 2f64.powf(-1.0 / p);
            assert!((l.b()[0] + c).abs() < 1e-15 && (l.b()[1] - c).abs() < 1e-15);
        }
    }

    #[test]
    fn hexagonal_lattices_coincide() {
        // (1,0),(1/2,√3/2) and (1,0),(-1/2,√3/2) span the same points
        let printed = Lattice2::new([1.0, 0.0], [0.5, SQRT3 / 2.0]).unwrap();
        assert!(printed.same_lattice(&hexagonal(), 1e-12));
        assert!(!printed.same_lattice(&hexagonal().scaled(2.0), 1e-12));
    }

    #[test]
    fn enumerate_examples() {
        let id = Lattice2::new([1.0, 0.0], [0.0, 1.0]).unwrap();
        let pts = sorted(enumerate_points(&id, 1.0, Exponent::Finite(2.0)).unwrap());
        assert_eq!(pts, vec![[-1.0, 0.0], [0.0, -1.0], [0.0, 1.0], [1.0, 0.0]]);

        let pts = enumerate_points(&hexagonal(), 1.0 + 1e-12, Exponent::Finite(2.0)).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.iter().all(|&v| (Exponent::Finite(2.0).gauge(v) - 1.0).abs() < 1e-12));

        let coarse = Lattice2::new([10.0, 0.0], [0.0, 10.0]).unwrap();
        assert!(enumerate_points(&coarse, 1.0, Exponent::Finite(2.0)).unwrap().is_empty());
        assert!(enumerate_points(&coarse, 0.0, Exponent::Finite(2.0)).is_err());
    }

    #[test]
    fn near_degenerate_basis_overflows() {
        let l = Lattice2::new([1.0, 0.0], [1.0, 1e-12]).unwrap();
        assert!(matches!(
            enumerate_points(&l, 1.0, Exponent::Finite(2.0)),
            Err(Error::EnumerationOverflow { .. })
        ));
    }

    fn naive_enumeration(l: &Lattice2, radius: f64, e: Exponent, n: i64) -> Vec<Point> {
        let mut out = Vec::new();
        for i in -n..=n {
            for j in -n..=n {
                let v = [i as f64 * l.a()[0] + j as f64 * l.b()[0], i as f64 * l.a()[1] + j as f64 * l.b()[1]];
                if (i, j) != (0, 0) && e.gauge(v) <= radius {
                    out.push(v);
                }
            }
        }
        sorted(out)
    }

    #[test]
    fn min_gauge_examples() {
        let id = Lattice2::new([1.0, 0.0], [0.0, 1.0]).unwrap();
        assert_eq!(min_gauge(&id, Exponent::Finite(2.0)).unwrap(), 1.0);
        let doubled = hexagonal().scaled(2.0);
        assert!((min_gauge(&doubled, Exponent::Finite(2.0)).unwrap() - 4.0).abs() < 1e-14);
        assert!((min_length(&doubled, Exponent::Finite(2.0)).unwrap() - 2.0).abs() < 1e-15);
        let l1 = Lattice2::new([0.5, 0.5], [0.0, 1.0]).unwrap();
        assert_eq!(min_gauge(&l1, Exponent::Finite(1.0)).unwrap(), 1.0);
        let far = Lattice2::new([0.01, 0.0], [0.0, 500.0]).unwrap();
        assert!((min_gauge(&far, Exponent::Infinity).unwrap() - 0.01).abs() < 1e-16);
    }

    #[test]
    fn admissibility_examples() {
        let r = is_admissible(&hexagonal(), &Ball::unit(Exponent::Finite(2.0))).unwrap();
        assert!(r.admissible);
        assert_eq!(r.boundary_pairs, 3);
        assert!((r.min_gauge - 1.0).abs() < 1e-12);

        let r = is_admissible(&hexagonal().scaled(0.9), &Ball::unit(Exponent::Finite(2.0))).unwrap();
        assert!(!r.admissible);
        assert!((r.min_gauge - 0.81).abs() < 1e-12);

        let id = Lattice2::new([1.0, 0.0], [0.0, 1.0]).unwrap();
        let r = is_admissible(&id, &Ball::unit(Exponent::Finite(1.5))).unwrap();
        assert!(r.admissible);
        assert_eq!(r.min_gauge, 1.0);
        assert_eq!(r.boundary_pairs, 2);

        let coarse = Lattice2::new([10.0, 0.0], [0.0, 10.0]).unwrap();
        let r = is_admissible(&coarse, &Ball::unit(Exponent::Finite(2.0))).unwrap();
        assert!(r.admissible && r.enumerated == 0);
        assert!((r.min_gauge - 100.0).abs() < 1e-12);
    }

    #[test]
    fn packing_examples() {
        let e2 = Exponent::Finite(2.0);
        assert!(is_packing(&hexagonal().scaled(2.0), e2).unwrap());
        assert!(!is_packing(&hexagonal(), e2).unwrap());
        let square = Lattice2::new([2.0, 0.0], [0.0, 2.0]).unwrap();
        assert!(is_packing(&square, e2).unwrap());
        assert!((density(&square, e2).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let hex_density = density(&hexagonal().scaled(2.0), e2).unwrap();
        assert!((hex_density - std::f64::consts::PI / (2.0 * SQRT3)).abs() < 1e-12);
        assert!(matches!(density(&hexagonal(), e2), Err(Error::NotAPacking { .. })));
    }

    #[test]
    fn moduli_lattices_touch_the_boundary_three_times() {
        for p in [1.2, 1.5, 2.0, 2.4, 3.0, 4.5] {
            let s_max = sigma_p(p);
            for k in 0..=10 {
                let sigma = 1.0 + (s_max - 1.0) * k as f64 / 10.0;
                let tau = tau_of_sigma(p, sigma).unwrap();
                let l = from_moduli(p, tau, sigma);
                let r = is_admissible(&l, &Ball::unit(Exponent::Finite(p))).unwrap();
                assert!(r.admissible, "p = {p}, sigma = {sigma}");
                assert_eq!(r.boundary_pairs, 3, "p = {p}, sigma = {sigma}");
                let m = moduli::delta(p, sigma).unwrap();
                assert!((l.determinant() - m.delta).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scan_endpoints() {
        let s = moduli_scan(1.5, 101).unwrap();
        assert!(s.argmin_at_one());
        let s = moduli_scan(2.3, 101).unwrap();
        assert!(s.argmin_at_sigma_p());
        assert!((s.argmin_sigma() - sigma_p(2.3)).abs() < 1e-15);
        let s = moduli_scan(3.0, 101).unwrap();
        assert!(s.argmin_at_one());
        assert_eq!(s.points.len(), 101);
        assert!(s.min_lattice_gauge >= 1.0 - ADMISSIBILITY_TOL);
        assert!(moduli_scan(2.0, 2).is_err());
        assert!(moduli_scan(1.0, 10).is_err());
    }

    fn basis_strategy() -> impl Strategy<Value = Lattice2> {
        (0.2f64..3.0, 0.0f64..6.3, 0.2f64..3.0, 0.3f64..2.8)
            .prop_map(|(r1, t1, r2, dt)| {
                let t2 = t1 + dt;
                Lattice2::new([r1 * t1.cos(), r1 * t1.sin()], [r2 * t2.cos(), r2 * t2.sin()]).unwrap()
            })
    }

    // Coefficients of points within gauge radius 2 stay below 20 for these bases.
    fn small_basis_strategy() -> impl Strategy<Value = Lattice2> {
        (0.5f64..3.0, 0.0f64..6.3, 0.5f64..3.0, 0.3f64..2.8)
            .prop_map(|(r1, t1, r2, dt)| {
                let t2 = t1 + dt;
                Lattice2::new([r1 * t1.cos(), r1 * t1.sin()], [r2 * t2.cos(), r2 * t2.sin()]).unwrap()
            })
    }

    fn exponent_strategy() -> impl Strategy<Value = Exponent> {
        prop_oneof![(1.0f64..7.0).prop_map(Exponent::Finite), Just(Exponent::Infinity)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn enumeration_matches_naive_double_loop(l in small_basis_strategy(), e in exponent_strategy(), r in 0.3f64..2.0) {
            let fast = sorted(enumerate_points(&l, r, e).unwrap());
            let naive = naive_enumeration(&l, r, e, 20);
            prop_assert_eq!(fast, naive);
        }

        #[test]
        fn doubling_scales_determinant_and_length(l in basis_strategy(), e in exponent_strategy()) {
            let d = l.scaled(2.0);
            prop_assert_eq!(d.determinant(), 4.0 * l.determinant());
            let (m1, m2) = (min_length(&l, e).unwrap(), min_length(&d, e).unwrap());
            prop_assert!((m2 - 2.0 * m1).abs() <= 1e-12 * m2.max(1.0));
        }

        #[test]
        fn packing_density_never_exceeds_one(l in basis_strategy(), e in exponent_strategy()) {
            let len = min_length(&l, e).unwrap();
            let packing = l.scaled(2.0 / len);
            prop_assert!(is_packing(&packing, e).unwrap());
            prop_assert!(density(&packing, e).unwrap() <= 1.0 + 1e-12);
        }
    }
}
