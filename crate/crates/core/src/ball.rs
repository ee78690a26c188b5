//! Planar p-balls `α·D_p` with `D_p = { |x|^p + |y|^p <= 1 }`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::gamma;

/// A point of the plane.
pub type Point = [f64; 2];

/// Default slack for strict interior tests.
pub const INTERIOR_TOL: f64 = 1e-9;

/// The ball exponent: a finite `p >= 1` or the Chebyshev limit `p = inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Checked constructor; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    /// `p` as a float, `f64::INFINITY` for the Chebyshev limit.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// `|x|^p + |y|^p`, or `max(|x|, |y|)` for `p = inf`.
    pub fn gauge(self, v: Point) -> f64 {
        match self {
            Exponent::Finite(p) => v[0].abs().powf(p) + v[1].abs().powf(p),
            Exponent::Infinity => v[0].abs().max(v[1].abs()),
        }
    }

    /// The l_p length of `v`.
    pub fn norm(self, v: Point) -> f64 {
        let m = v[0].abs().max(v[1].abs());
        match self {
            Exponent::Infinity => m,
            Exponent::Finite(_) if m == 0.0 => 0.0,
            Exponent::Finite(p) => {
                m * ((v[0].abs() / m).powf(p) + (v[1].abs() / m).powf(p)).powf(1.0 / p)
            }
        }
    }

    /// Gauge value of a vector of the given l_p length.
    pub fn gauge_of_length(self, length: f64) -> f64 {
        match self {
            Exponent::Finite(p) => length.powf(p),
            Exponent::Infinity => length,
        }
    }

    /// Inverse of [`Exponent::gauge_of_length`].
    pub fn length_of_gauge(self, gauge: f64) -> f64 {
        match self {
            Exponent::Finite(p) => gauge.powf(1.0 / p),
            Exponent::Infinity => gauge,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => Ok(Exponent::Infinity),
            _ => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse exponent {s:?}")))?;
                Exponent::new(p)
            }
        }
    }
}

/// The ball `scale · D_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    exponent: Exponent,
    scale: f64,
}

impl Ball {
    pub fn new(exponent: Exponent, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidScale(scale));
        }
        Ok(Self { exponent, scale })
    }

    /// `D_p`.
    pub fn unit(exponent: Exponent) -> Self {
        Self { exponent, scale: 1.0 }
    }

    /// `2 D_p`.
    pub fn doubled(exponent: Exponent) -> Self {
        Self { exponent, scale: 2.0 }
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Gauge of `v / scale` under the ball's exponent.
    pub fn gauge(&self, v: Point) -> f64 {
        self.exponent.gauge([v[0] / self.scale, v[1] / self.scale])
    }

    /// Closed-ball membership; boundary points are inside.
    pub fn contains(&self, v: Point) -> bool {
        self.gauge(v) <= 1.0
    }

    /// Strict interior membership with slack `tol`.
    pub fn contains_strictly(&self, v: Point, tol: f64) -> bool {
        self.gauge(v) < 1.0 - tol
    }

    /// Area of the ball.
    pub fn area(&self) -> f64 {
        area(self.exponent) * self.scale * self.scale
    }
}

/// Classification of `D_p` by its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallClass {
    /// `p = 1`
    LimitingMinkowski,
    /// `1 < p < 2`
    Minkowski,
    /// `2 <= p < p_0`
    Davis,
    /// `p >= p_0`
    ChebyshevCohn,
    /// `p = inf`
    LimitingChebyshev,
}

impl BallClass {
    pub fn name(self) -> &'static str {
        match self {
            BallClass::LimitingMinkowski => "LimitingMinkowski",
            BallClass::Minkowski => "Minkowski",
            BallClass::Davis => "Davis",
            BallClass::ChebyshevCohn => "ChebyshevCohn",
            BallClass::LimitingChebyshev => "LimitingChebyshev",
        }
    }
}

impl fmt::Display for BallClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Gauge of `point`; see [`Exponent::gauge`].
pub fn gauge(e: Exponent, point: Point) -> f64 {
    e.gauge(point)
}

/// Area of `D_p`: `4 Γ(1 + 1/p)^2 / Γ(1 + 2/p)`, and 4 for `p = inf`.
pub fn area(e: Exponent) -> f64 {
    match e {
        Exponent::Infinity => 4.0,
        Exponent::Finite(p) => {
            // Both arguments lie in (1, 3] for p >= 1.
            let g1 = gamma(1.0 + 1.0 / p).expect("gamma argument in (1, 2]");
            let g2 = gamma(1.0 + 2.0 / p).expect("gamma argument in (1, 3]");
            4.0 * g1 * g1 / g2
        }
    }
}

/// Classifies `D_p` given the Davis constant `p0`.
pub fn classify(e: Exponent, p0: f64) -> BallClass {
    match e {
        Exponent::Infinity => BallClass::LimitingChebyshev,
        Exponent::Finite(p) if p <= 1.0 => BallClass::LimitingMinkowski,
        Exponent::Finite(p) if p < 2.0 => BallClass::Minkowski,
        Exponent::Finite(p) if p < p0 => BallClass::Davis,
        Exponent::Finite(_) => BallClass::ChebyshevCohn,
    }
}
